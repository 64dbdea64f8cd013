"""Fundamental modules as wedge powers of the vector representation.

Basis vectors are increasing k-tuples of positions in the index order of the
vector representation (see ``degen.chevalley.vector_indices``). Root vectors
act as derivations, with matrices taken from the Chevalley realization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

from degen.chevalley import Matrix, index_weight, realization
from degen.cones import DegreeVector, abelianisation_cone, membership, validate_cuts
from degen.errors import ConeMembershipError, DomainError, InvariantViolation, UnsupportedWeightError
from degen.linalg import SpanBasis
from degen.rootsys import RootLike, RootSystem, build_root_system
from degen.stretch import stretch_map
from degen.weyl import extremal_columns

Wedge = tuple[int, ...]  # increasing positions
Vector = dict  # Wedge -> Fraction
Operator = dict  # Wedge -> Vector (images of basis vectors, zero images omitted)


def wedge_range(family: str, n: int) -> range:
    """Admissible k: spin indices are excluded and type C is not realized."""
    top = {"A": n, "B": n - 1, "D": n - 2}.get(family)
    if top is None:
        raise DomainError(f"wedge modules are not realized for type {family}")
    return range(1, top + 1)


def _sort_sign(slots: list[int]) -> tuple[int, Wedge] | None:
    if len(set(slots)) != len(slots):
        return None
    sign = 1
    arr = list(slots)
    for a in range(len(arr)):
        for b in range(len(arr) - 1 - a):
            if arr[b] > arr[b + 1]:
                arr[b], arr[b + 1] = arr[b + 1], arr[b]
                sign = -sign
    return sign, tuple(arr)


@dataclass(eq=False)
class WedgeModule:
    rs: RootSystem
    k: int
    indices: tuple[int, ...]
    basis: tuple[Wedge, ...]
    f_mats: dict = field(repr=False)
    e_mats: dict = field(repr=False)
    _ops: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def labels(self, w: Wedge) -> tuple[int, ...]:
        """Signed vector-representation indices of a basis wedge."""
        return tuple(self.indices[p] for p in w)

    def wedge_of(self, signed: Iterable[int]) -> tuple[int, Wedge]:
        """(sign, basis wedge) for e_{a_1} ^ ... ^ e_{a_k} given signed indices."""
        pos = {x: p for p, x in enumerate(self.indices)}
        got = _sort_sign([pos[a] for a in signed])
        if got is None:
            raise DomainError("repeated index in a wedge")
        return got

    def weight(self, w: Wedge) -> tuple[int, ...]:
        out = [0] * self.rs.dim
        for x in self.labels(w):
            for p, y in enumerate(index_weight(x, self.rs.dim)):
                out[p] += y
        return tuple(out)

    @cached_property
    def highest(self) -> Wedge:
        return tuple(range(self.k))

    def lift(self, x: Matrix) -> Operator:
        """The derivation action of a matrix on the wedge power."""
        cols: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in x.items():
            cols.setdefault(c, []).append((r, v))
        out: Operator = {}
        for w in self.basis:
            img: Vector = {}
            for slot, c in enumerate(w):
                for r, v in cols.get(c, ()):
                    got = _sort_sign(list(w[:slot]) + [r] + list(w[slot + 1 :]))
                    if got is None:
                        continue
                    sign, tgt = got
                    img[tgt] = img.get(tgt, 0) + sign * v
            img = {t: v for t, v in img.items() if v}
            if img:
                out[w] = img
        return out

    def f(self, beta: RootLike) -> Operator:
        return self._op("f", self.rs.coords(beta))

    def e(self, beta: RootLike) -> Operator:
        return self._op("e", self.rs.coords(beta))

    def _op(self, kind: str, c: tuple) -> Operator:
        key = (kind, c)
        if key not in self._ops:
            self._ops[key] = self.lift((self.f_mats if kind == "f" else self.e_mats)[c])
        return self._ops[key]

    def is_integral(self) -> bool:
        return all(
            Fraction(v).denominator == 1
            for b in self.rs.positive
            for op in (self.e(b), self.f(b))
            for img in op.values()
            for v in img.values()
        )


def apply(op: Operator, vec: Vector) -> Vector:
    out: Vector = {}
    for w, x in vec.items():
        for t, v in op.get(w, {}).items():
            out[t] = out.get(t, 0) + x * v
    return {t: v for t, v in out.items() if v}


def compose(a: Operator, b: Operator) -> Operator:
    """a after b."""
    out = {}
    for w, img in b.items():
        r = apply(a, img)
        if r:
            out[w] = r
    return out


def commutator(a: Operator, b: Operator) -> Operator:
    ab, ba = compose(a, b), compose(b, a)
    out = {}
    for w in set(ab) | set(ba):
        x = dict(ab.get(w, {}))
        for t, v in ba.get(w, {}).items():
            x[t] = x.get(t, 0) - v
        x = {t: v for t, v in x.items() if v}
        if x:
            out[w] = x
    return out


def _conjugate(x: Matrix, scale: Sequence[int]) -> Matrix:
    return {(r, c): v * scale[r] / scale[c] for (r, c), v in x.items()}


@lru_cache(maxsize=None)
def _integral_matrices(family: str, n: int) -> tuple[dict, dict]:
    """Root vectors of the vector representation after rescaling e_0 and the
    e_{-k} so that every entry is an integer. Conjugating by a diagonal matrix
    leaves all brackets unchanged."""
    real = realization(build_root_system(family, n))
    idx = real.indices
    for zero, neg in product((1, 2), repeat=2):
        scale = [1 if k > 0 else (zero if k == 0 else neg) for k in idx]
        f = {c: _conjugate(x, scale) for c, x in real.f.items()}
        e = {c: _conjugate(x, scale) for c, x in real.e.items()}
        if all(Fraction(v).denominator == 1 for mats in (f, e) for x in mats.values() for v in x.values()):
            return f, e
    raise InvariantViolation(f"no integral rescaling found for {family}{n}")


@lru_cache(maxsize=None)
def _build(family: str, n: int, k: int) -> WedgeModule:
    rs = build_root_system(family, n)
    idx = tuple(realization(rs).indices)
    basis = tuple(combinations(range(len(idx)), k))
    f, e = _integral_matrices(family, n)
    return WedgeModule(rs, k, idx, basis, f, e)


def build_wedge_module(rs: RootSystem, k: int) -> WedgeModule:
    if rs.family == "C":
        raise DomainError("type C wedge modules are not realized")
    if rs.family in ("B", "D") and k in range(wedge_range(rs.family, rs.rank).stop, rs.rank + 1):
        raise UnsupportedWeightError(f"k={k} is a spin index of {rs.id}")
    if k not in wedge_range(rs.family, rs.rank):
        raise DomainError(f"k={k} outside {wedge_range(rs.family, rs.rank)}")
    m = _build(rs.family, rs.rank, k)
    expect = comb(len(m.indices), k)
    if m.dim != expect:
        raise InvariantViolation(f"wedge module dimension {m.dim} != {expect}")
    return m


def module_violations(m: WedgeModule) -> list[str]:
    """[e_b, f_b] acts on each wedge by <wt, b^vee>, and e_b / f_b shift weights by +-b."""
    out = []
    for b in m.rs.positive:
        c = b.coords
        e, f = m.e(c), m.f(c)
        h = {}
        for w in m.basis:
            v = m.rs.pairing(m.weight(w), b)
            if v:
                h[w] = {w: v}
        if commutator(e, f) != h:
            out.append(f"[e,f] != h for {b.label}")
        for op, sign in ((e, 1), (f, -1)):
            for w, img in op.items():
                want = tuple(x + sign * y for x, y in zip(m.weight(w), c))
                if any(m.weight(t) != want for t in img):
                    out.append(f"weight shift wrong for {b.label} on {m.labels(w)}")
    return out


# -- filtration -------------------------------------------------------------------------


def filtration_dims(m: WedgeModule, d: DegreeVector | Sequence) -> dict[Fraction, int]:
    """Graded dimensions of the filtration U(n-)_{<= s} . v for a degree vector d.

    Every monomial f_{b_1} ... f_{b_l} v lies in one weight space, so the spaces
    F(mu, s) = F_{<= s} cap V_mu satisfy F(mu, s) = sum_b f_b F(mu + b, s - d_b),
    plus the highest weight line at mu = lambda, s >= 0. That recursion runs
    from higher to lower weights, whatever the signs of d."""
    rs = m.rs
    dv = d if isinstance(d, DegreeVector) else DegreeVector.of(rs, d)
    if not membership(abelianisation_cone(rs), dv):
        raise ConeMembershipError("degree vector is outside the abelianisation cone")
    by_weight: dict[tuple, list[Wedge]] = {}
    for w in m.basis:
        by_weight.setdefault(m.weight(w), []).append(w)
    top = m.weight(m.highest)
    height = lambda mu: sum(rs.simple_coefficients(tuple(a - b for a, b in zip(top, mu))))  # noqa: E731
    order = sorted(by_weight, key=height)
    degs: dict[tuple, set[Fraction]] = {top: {Fraction(0)}}
    for mu in order:
        for b in rs.positive:
            lower = tuple(x - y for x, y in zip(mu, b.coords))
            if lower in by_weight and mu in degs:
                degs.setdefault(lower, set()).update(s + dv[b] for s in degs[mu])
    if set(degs) != set(by_weight):
        raise InvariantViolation("some weight space is not reached from the highest weight")

    spaces: dict[tuple, list[tuple[Fraction, SpanBasis]]] = {}

    def space_at(mu, s) -> SpanBasis | None:
        best = None
        for t, sp in spaces.get(mu, ()):
            if t <= s:
                best = sp
        return best

    for mu in order:
        layers = []
        for s in sorted(degs[mu]):
            sp = SpanBasis()
            if mu == top and s >= 0:
                sp.add({m.highest: Fraction(1)})
            for b in rs.positive:
                upper = tuple(x + y for x, y in zip(mu, b.coords))
                src = space_at(upper, s - dv[b]) if upper in by_weight else None
                if src is None:
                    continue
                op = m.f(b)
                for vec in src.vectors():
                    sp.add(apply(op, vec))
            layers.append((s, sp))
        spaces[mu] = layers

    graded: dict[Fraction, int] = {}
    for mu, layers in spaces.items():
        prev = 0
        for s, sp in layers:
            if len(sp) > prev:
                graded[s] = graded.get(s, 0) + len(sp) - prev
                prev = len(sp)
        if prev != len(by_weight[mu]):
            raise InvariantViolation(f"filtration does not exhaust weight space {mu}")
    total = sum(graded.values())
    if total != m.dim:
        raise InvariantViolation(f"graded dimensions sum to {total}, module has {m.dim}")
    return dict(sorted(graded.items()))


# -- Demazure spans -----------------------------------------------------------------------


@dataclass
class SpanResult:
    dim: int
    start: tuple[int, ...]  # signed indices of the extremal wedge
    prefix: tuple[int, ...]
    prefix_ok: bool
    support: frozenset[tuple[int, ...]]  # signed-index sets of all wedges met


def demazure_span(rs: RootSystem, cuts: Iterable[int], i: int) -> SpanResult:
    """Close the extremal wedge e_{w_c(1)} ^ ... ^ e_{w_c(l_i)} under raising
    operators of the stretched system."""
    if rs.family in ("B", "D") and i not in wedge_range(rs.family, rs.rank):
        raise UnsupportedWeightError(f"i={i} is a spin index of {rs.id}")
    c = validate_cuts(rs, cuts)
    sm = stretch_map(rs, c)
    big = sm.target
    li = sm(i)
    mod = build_wedge_module(big, li)
    cols = extremal_columns(rs, c, i)
    sign, start = mod.wedge_of(cols)
    per_weight: dict[tuple, SpanBasis] = {}
    queue = [{start: Fraction(sign)}]
    per_weight.setdefault(mod.weight(start), SpanBasis()).add(queue[0])
    support = {start}
    ops = [mod.e(b) for b in big.positive]
    while queue:
        vec = queue.pop()
        for op in ops:
            img = apply(op, vec)
            if not img:
                continue
            mu = mod.weight(next(iter(img)))
            sp = per_weight.setdefault(mu, SpanBasis())
            if sp.add(img):
                queue.append(img)
                support.update(img)
    prefix = tuple(range(1, li - i + 1))
    labelled = frozenset(tuple(sorted(mod.labels(w))) for w in support)
    ok = all(set(prefix) <= set(w) for w in labelled)
    return SpanResult(sum(len(s) for s in per_weight.values()), tuple(cols), prefix, ok, labelled)


def demazure_span_dim(rs: RootSystem, cuts: Iterable[int], i: int) -> int:
    res = demazure_span(rs, cuts, i)
    if not res.prefix_ok:
        raise InvariantViolation(f"a raised wedge lost the prefix {res.prefix}")
    return res.dim
