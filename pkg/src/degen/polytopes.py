"""Root posets, triangular Weyl elements and FFLV lattice-point counts (types A, C).

Positive roots of A_n and C_n sit on a staircase grid of cells (p, q):

    type A:  1 <= p <= q <= n,               (p, q) = alpha_{p,q}
    type C:  1 <= p <= q <= 2n-1, p+q <= 2n, (p, q) = alpha_{p,q} for q < n,
                                              alpha_{p, bar(2n-q)} for q >= n

A Dyck path starts at a simple root (i, i) and moves to (p+1, q) or (p, q+1)
until it reaches the bottom cell of some column. Its points must satisfy
sum over the path <= lambda_i + ... + lambda_j, where j is the end column
(capped at n in type C).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from degen.cones import validate_cuts
from degen.errors import DomainError, InvariantViolation
from degen.rootsys import Label, Root, RootLike, RootSystem, barred, build_root_system, straight
from degen.stretch import weight
from degen.weyl import (
    WeylElement,
    element_of,
    inversion_set,
    reduced_word,
    wc_element,
)

# -- poset -----------------------------------------------------------------------------


@dataclass
class RootPoset:
    """alpha > beta iff alpha - beta is a positive root, taken literally."""

    rs: RootSystem

    def greater(self, a: RootLike, b: RootLike) -> bool:
        ca, cb = self.rs.coords(a), self.rs.coords(b)
        return self.rs.is_positive_root(tuple(x - y for x, y in zip(ca, cb)))

    @cached_property
    def relation(self) -> frozenset[tuple[Root, Root]]:
        pos = self.rs.positive
        return frozenset((a, b) for a in pos for b in pos if self.greater(a, b))

    def antisymmetric(self) -> bool:
        return not any((b, a) in self.relation for a, b in self.relation)

    def transitivity_failures(self) -> list[tuple[Root, Root, Root]]:
        """(a, b, c) with a > b > c but not a > c."""
        below: dict[Root, list[Root]] = {}
        for a, b in self.relation:
            below.setdefault(a, []).append(b)
        out = []
        for a, bs in below.items():
            for b in bs:
                for c in below.get(b, ()):
                    if (a, c) not in self.relation:
                        out.append((a, b, c))
        return sorted(out, key=lambda t: tuple(self.rs.index[r.coords] for r in t))

    def generated_order(self) -> frozenset[tuple[Root, Root]]:
        """Transitive closure of the literal relation."""
        rel = set(self.relation)
        changed = True
        while changed:
            changed = False
            for a, b in list(rel):
                for b2, c in list(rel):
                    if b2 == b and (a, c) not in rel:
                        rel.add((a, c))
                        changed = True
        return frozenset(rel)


# -- join / meet and triangularity ---------------------------------------------------


def _interval(rs: RootSystem, r: Root) -> tuple[int, int]:
    lab = r.label
    if rs.family != "A" or lab.barred:
        raise DomainError("join and meet are defined on type A roots only")
    return lab.i, lab.j


def join_meet(rs: RootSystem, a: RootLike, b: RootLike) -> tuple[Root, Root | None]:
    if rs.family != "A":
        raise DomainError(f"join and meet need type A, got {rs.family}")
    i, j = _interval(rs, rs.root(a))
    k, l = _interval(rs, rs.root(b))
    join = rs.root(straight(min(i, k), max(j, l)))
    lo, hi = max(i, k), min(j, l)
    meet = rs.root(straight(lo, hi)) if lo <= hi else None
    return join, meet


def triangularity_failures(rs: RootSystem, roots: Iterable[RootLike]) -> list[str]:
    if rs.family != "A":
        raise DomainError(f"triangular subsets are defined for type A, got {rs.family}")
    subset = {rs.root(r) for r in roots}
    out = []
    for a in subset:
        for b in subset:
            (i, j), (k, l) = _interval(rs, a), _interval(rs, b)
            join, meet = join_meet(rs, a, b)
            # supports [i, j] and [k, l] have a consecutive union iff they overlap or touch
            if max(i, k) <= min(j, l) + 1 and join not in subset:
                out.append(f"join of {a.label} and {b.label} missing")
            if meet is not None and meet not in subset:
                out.append(f"meet of {a.label} and {b.label} missing")
    return sorted(set(out))


def is_triangular_subset(rs: RootSystem, roots: Iterable[RootLike]) -> bool:
    return not triangularity_failures(rs, roots)


def type_c_embedding(w: WeylElement) -> WeylElement:
    """Image of a type C_N element in the symmetric group of type A_{2N-1}: s_i goes
    to t_i t_{2N-i} for i < N and s_N goes to t_N."""
    if w.family != "C":
        raise DomainError("the embedding starts from type C")
    N = w.rank
    big = build_root_system("A", 2 * N - 1)
    letters: list[int] = []
    for i in reduced_word(w):
        letters += [i, 2 * N - i] if i < N else [N]
    img = element_of(big, letters)
    # independent description: the signed permutation on 1..N, -N..-1 read as 1..2N
    pos = lambda k: k if k > 0 else 2 * N + 1 + k  # noqa: E731
    direct = [0] * (2 * N)
    for k in range(1, N + 1):
        direct[k - 1] = pos(w(k))
        direct[2 * N - k] = pos(-w(k))
    if tuple(direct) != img.images:
        raise InvariantViolation("type C embedding disagrees with the signed permutation")
    return img


def primed_cuts(n: int, cuts: Sequence[int]) -> tuple[int, ...]:
    """c' = {c_1..c_t, 2n-1-c_t..2n-1-c_1}, a cut set for A_{2n-1}."""
    return tuple(sorted(set(cuts) | {2 * n - 1 - c for c in cuts}))


def is_triangular(rs: RootSystem, w: WeylElement) -> bool:
    if (w.family, w.rank) != (rs.family, rs.rank):
        raise DomainError("element and root system disagree")
    if rs.family == "A":
        return is_triangular_subset(rs, inversion_set(w))
    if rs.family == "C":
        img = type_c_embedding(w)
        return is_triangular_subset(img.rs, inversion_set(img))
    raise DomainError(f"triangularity is defined for types A and C, got {rs.family}")


def wc_embedding_matches(rs: RootSystem, cuts: Iterable[int]) -> bool:
    """For type C: the embedded w_c equals w_{c'} of type A_{2n-1}."""
    if rs.family != "C":
        raise DomainError("only meaningful for type C")
    c = validate_cuts(rs, cuts)
    _, _, w = wc_element(rs, c)
    img = type_c_embedding(w)
    _, _, wa = wc_element(build_root_system("A", 2 * rs.rank - 1), primed_cuts(rs.rank, c))
    return img == wa


# -- FFLV polytopes -----------------------------------------------------------------


Cell = tuple[int, int]


def _columns(family: str, n: int) -> dict[int, int]:
    """column q -> its bottom row pmax(q)."""
    if family == "A":
        return {q: q for q in range(1, n + 1)}
    if family == "C":
        return {q: q if q <= n else 2 * n - q for q in range(1, 2 * n)}
    raise DomainError(f"FFLV polytopes are implemented for types A and C, got {family}")


def cell_label(family: str, n: int, cell: Cell) -> Label:
    p, q = cell
    if family == "A" or q < n:
        return straight(p, q)
    return barred(p, 2 * n - q)


def _bound(family: str, n: int, lam: Sequence[int], i: int, q: int) -> int:
    return sum(lam[i - 1 : min(q, n)])


def dyck_paths(family: str, n: int) -> list[tuple[Cell, ...]]:
    cols = _columns(family, n)
    out = []

    def walk(path):
        p, q = path[-1]
        if p == cols[q]:
            out.append(tuple(path))
        if p + 1 <= cols[q]:
            walk(path + [(p + 1, q)])
        if q + 1 in cols and p <= cols[q + 1]:
            walk(path + [(p, q + 1)])

    for i in range(1, n + 1):
        walk([(i, i)])
    return out


@dataclass(frozen=True)
class MarkedPolytope:
    family: str
    rank: int
    weight: tuple[int, ...]
    inequalities: tuple[tuple[tuple[Root, ...], int], ...] = field(repr=False)

    def contains(self, x: dict[Root, int]) -> bool:
        if any(v < 0 for v in x.values()):
            return False
        return all(sum(x.get(r, 0) for r in chain) <= b for chain, b in self.inequalities)

    def to_json(self) -> str:
        return json.dumps(
            {
                "family": self.family,
                "rank": self.rank,
                "weight": list(self.weight),
                "inequalities": [
                    {"chain": [str(r.label) for r in chain], "bound": b} for chain, b in self.inequalities
                ],
            },
            indent=2,
        )


def marked_polytope(rs: RootSystem, lam: Sequence[int]) -> MarkedPolytope:
    lam = weight(lam)
    if len(lam) != rs.rank:
        raise DomainError(f"weight needs {rs.rank} coordinates")
    fam, n = rs.family, rs.rank
    ineqs = []
    for path in dyck_paths(fam, n):
        roots = tuple(rs.root(cell_label(fam, n, c)) for c in path)
        for a, b in zip(path, path[1:]):
            # saturated in the grid order: each step moves one coordinate by one
            if (b[0] - a[0]) + (b[1] - a[1]) != 1:
                raise InvariantViolation(f"path step {a}->{b} is not a cover")
        ineqs.append((roots, _bound(fam, n, lam, path[0][0], path[-1][1])))
    return MarkedPolytope(fam, n, tuple(lam), tuple(ineqs))


def lattice_point_count(rs: RootSystem, lam: Sequence[int]) -> int:
    """Count lattice points by a column-profile dynamic programme.

    The state after each cell is, for every cell of the current profile, the
    vector of maximal path sums from each admissible start. Only these maxima
    enter the Dyck path inequalities, so equal states are merged."""
    lam = weight(lam)
    fam, n = rs.family, rs.rank
    cols = _columns(fam, n)
    if len(lam) != n:
        raise DomainError(f"weight needs {n} coordinates")
    states: dict[tuple, int] = {(): 1}
    for q in sorted(cols):
        prev_height = cols.get(q - 1, 0)
        for p in range(1, cols[q] + 1):
            caps = [_bound(fam, n, lam, i, q) for i in range(1, p + 1)]
            top = max(caps)
            nxt: dict[tuple, int] = {}
            for st, cnt in states.items():
                done, old = st[: p - 1], st[p - 1 :]
                up = done[-1] if done else None
                left = old[0] if p <= prev_height else None
                rest = old[1:] if left is not None else old
                base = []
                for i in range(1, p + 1):
                    cands = [v[i - 1] for v in (up, left) if v is not None and i <= len(v)]
                    base.append(max(cands) if cands else (0 if (i == p == q) else None))
                for s in range(top + 1):
                    vec = tuple(None if b is None else b + s for b in base)
                    # sums only grow along a path, and the path can still reach
                    # the bottom of column q, so each start must stay within its cap
                    if any(v is not None and v > c for v, c in zip(vec, caps)):
                        break
                    key = done + (vec,) + rest
                    nxt[key] = nxt.get(key, 0) + cnt
            states = nxt
    return sum(states.values())


def lattice_point_count_bruteforce(rs: RootSystem, lam: Sequence[int]) -> int:
    """Enumerate the box 0 <= x <= sum(lam) directly; tiny cases only."""
    poly = marked_polytope(rs, lam)
    pos = rs.positive
    hi = sum(poly.weight)
    if (hi + 1) ** len(pos) > 2_000_000:
        raise DomainError("box too large for brute force")
    count = 0
    for vals in product(range(hi + 1), repeat=len(pos)):
        if poly.contains(dict(zip(pos, vals))):
            count += 1
    return count
