"""Chevalley bases from matrix realizations, and degree-graded brackets.

The vector representation uses the index orders

    A  1, ..., n+1
    B  1, ..., n, 0, -n, ..., -1
    C  1, ..., n, -n, ..., -1
    D  1, ..., n, -n, ..., -1

with e_k of weight e_k, e_{-k} of weight -e_k and e_0 of weight 0. The
orthogonal and symplectic algebras preserve the anti-diagonal form J
(entries 1, except -1 on the lower half for C). The root vector f_b is a
rescaled projection of an elementary matrix; rescaling runs by height so that
[f_a, f_b] = +-(r+1) f_{a+b}, where r is the length of the a-string below b.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Mapping

from degen.cones import (
    DegreeVector,
    abelianisation_cone,
    dynkin_cone,
    membership,
    validate_cuts,
)
from degen.errors import ConeMembershipError, InvariantViolation, PreconditionError
from degen.rootsys import Root, RootLike, RootSystem, alpha_chain, build_root_system
from degen.stretch import psi_root, stretch_map

Matrix = dict  # {(row, col): Fraction}, zero entries omitted


def vector_indices(family: str, n: int) -> tuple[int, ...]:
    if family == "A":
        return tuple(range(1, n + 2))
    down = tuple(range(-n, 0))
    return tuple(range(1, n + 1)) + ((0,) if family == "B" else ()) + down


def index_weight(k: int, dim: int) -> tuple[int, ...]:
    w = [0] * dim
    if k:
        w[abs(k) - 1] = 1 if k > 0 else -1
    return tuple(w)


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    by_row: dict[int, list] = {}
    for (r, c), v in y.items():
        by_row.setdefault(r, []).append((c, v))
    out: Matrix = {}
    for (r, k), v in x.items():
        for c, w in by_row.get(k, ()):
            out[(r, c)] = out.get((r, c), 0) + v * w
    return {k: v for k, v in out.items() if v}


def mat_add(x: Matrix, y: Matrix, s=1) -> Matrix:
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if v}


def mat_scale(x: Matrix, s) -> Matrix:
    return {k: v * s for k, v in x.items() if v * s}


def bracket(x: Matrix, y: Matrix) -> Matrix:
    return mat_add(mat_mul(x, y), mat_mul(y, x), -1)


def transpose(x: Matrix) -> Matrix:
    return {(c, r): v for (r, c), v in x.items()}


def ratio(x: Matrix, y: Matrix) -> Fraction | None:
    """The scalar s with x = s*y (None if x is not a multiple of y)."""
    if not x:
        return Fraction(0)
    if set(x) != set(y):
        return None
    k = next(iter(y))
    s = Fraction(x[k]) / y[k]
    return s if all(x[p] == s * y[p] for p in y) else None


@dataclass(frozen=True, eq=False)
class Realization:
    """Chevalley root vectors of one root system inside gl(V) for the vector
    representation V."""

    rs: RootSystem
    indices: tuple[int, ...]
    f: Mapping[tuple, Matrix]  # positive-root coords -> f_b
    e: Mapping[tuple, Matrix]  # positive-root coords -> e_b
    constants: Mapping[tuple[tuple, tuple], int]  # [f_a, f_b] = N f_{a+b}

    @property
    def position(self) -> dict[int, int]:
        return {k: p for p, k in enumerate(self.indices)}

    def h(self, beta: RootLike) -> Matrix:
        c = self.rs.coords(beta)
        return bracket(self.e[c], self.f[c])

    def table(self) -> "StructureTable":
        return StructureTable(self.rs.id, dict(self.constants))


def _form(family: str, indices: tuple[int, ...]) -> Matrix:
    pos = {k: p for p, k in enumerate(indices)}
    j: Matrix = {}
    for k in indices:
        sign = -1 if (family == "C" and k < 0) else 1
        j[(pos[k], pos[-k])] = Fraction(sign)
    return j


def _primitive(x: Matrix) -> Matrix:
    g = 0
    for v in x.values():
        g = gcd(g, Fraction(v).numerator)
    return {k: Fraction(v) / g for k, v in x.items()}


def _lowering(rs: RootSystem, coords: tuple) -> tuple[int, int]:
    """(a, b): the elementary matrix sending e_a to e_b has weight -beta."""
    nz = [(p + 1, x) for p, x in enumerate(coords) if x]
    if len(nz) == 2 and nz[1][1] < 0:
        return nz[0][0], nz[1][0]
    if len(nz) == 2:
        return nz[0][0], -nz[1][0]
    p, x = nz[0]
    return p, (0 if x == 1 else -p)


@lru_cache(maxsize=None)
def _realize(family: str, n: int) -> Realization:
    rs = build_root_system(family, n)
    idx = vector_indices(family, n)
    pos = {k: p for p, k in enumerate(idx)}
    raw: dict[tuple, Matrix] = {}
    if family != "A":
        j = _form(family, idx)
        jinv = mat_scale(j, -1) if family == "C" else j
    for b in rs.positive:
        a, tgt = _lowering(rs, b.coords)
        el = {(pos[tgt], pos[a]): Fraction(1)}
        x = el
        if family != "A":
            proj = mat_add(el, mat_mul(mat_mul(jinv, transpose(el)), j), -1)
            x = _primitive(proj) if proj else el
        raw[b.coords] = x

    def raw_bracket(a, b):
        s = tuple(p + q for p, q in zip(a, b))
        if s not in raw:
            return None
        m = ratio(bracket(raw[a], raw[b]), raw[s])
        if m is None or m == 0:
            raise InvariantViolation(f"[X_{a}, X_{b}] is not a nonzero multiple of X_{s}")
        return m

    lam: dict[tuple, Fraction] = {}
    for b in sorted(rs.positive, key=rs.height):
        if rs.height(b) == 1:
            lam[b.coords] = Fraction(1)
            continue
        for a in rs.simple:
            rest = tuple(p - q for p, q in zip(b.coords, a.coords))
            if rs.is_positive_root(rest):
                _, r = alpha_chain(rs, a, rest)
                m = raw_bracket(a.coords, rest)
                lam[b.coords] = lam[a.coords] * lam[rest] * abs(m) / (r + 1)
                break

    f = {c: mat_scale(x, lam[c]) for c, x in raw.items()}
    constants: dict[tuple[tuple, tuple], int] = {}
    for a in rs.positive:
        for b in rs.positive:
            m = raw_bracket(a.coords, b.coords) if a != b else None
            if m is None:
                continue
            s = tuple(p + q for p, q in zip(a.coords, b.coords))
            nval = lam[a.coords] * lam[b.coords] * m / lam[s]
            if nval.denominator != 1:
                raise InvariantViolation(f"non-integral structure constant {nval}")
            constants[(a.coords, b.coords)] = int(nval)

    e: dict[tuple, Matrix] = {}
    for b in rs.positive:
        xt = transpose(f[b.coords])
        hb = bracket(xt, f[b.coords])
        c = ratio(bracket(hb, xt), xt)
        if not c:
            raise InvariantViolation(f"degenerate sl2 for {b}")
        e[b.coords] = mat_scale(xt, Fraction(2) / c)
    return Realization(rs, idx, f, e, constants)


def realization(rs: RootSystem) -> Realization:
    return _realize(rs.family, rs.rank)


# -- structure tables ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class StructureTable:
    """N_{a,b} for positive roots a, b with a + b positive: [f_a, f_b] = N f_{a+b}."""

    system: object
    constants: dict[tuple[tuple, tuple], int]

    def get(self, a: tuple, b: tuple) -> int | None:
        return self.constants.get((a, b))

    def with_flipped(self, a: tuple, b: tuple) -> "StructureTable":
        """A corrupted copy with N_{a,b} and N_{b,a} negated (fault injection)."""
        c = dict(self.constants)
        c[(a, b)] = -c[(a, b)]
        c[(b, a)] = -c[(b, a)]
        return StructureTable(self.system, c)


def build_chevalley(rs: RootSystem) -> StructureTable:
    return realization(rs).table()


def chevalley_property_violations(rs: RootSystem, table: StructureTable | None = None) -> list[str]:
    """Antisymmetry and |N_{a,b}| = r+1 = q (a+b,a+b)/(b,b) over all pairs."""
    table = table or build_chevalley(rs)
    out = []
    for (a, b), nval in table.constants.items():
        if table.get(b, a) != -nval:
            out.append(f"antisymmetry fails at {a},{b}")
        q, r = alpha_chain(rs, a, b)
        s = tuple(x + y for x, y in zip(a, b))
        if abs(nval) != r + 1:
            out.append(f"|N| = {abs(nval)} but r+1 = {r + 1} at {a},{b}")
        if Fraction(q) * rs.inner(s, s) / rs.inner(b, b) != r + 1:
            out.append(f"chain identity fails at {a},{b}")
    return out


# -- graded algebra ------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GradedLieAlgebra:
    rs: RootSystem
    d: DegreeVector
    table: StructureTable

    def degree(self, c: tuple) -> Fraction:
        return self.d.values[self.rs.index[c]]


def graded_algebra(rs: RootSystem, d: DegreeVector, table: StructureTable | None = None) -> GradedLieAlgebra:
    if not membership(abelianisation_cone(rs), d, "closure"):
        raise ConeMembershipError("degree vector is outside the abelianisation cone")
    return GradedLieAlgebra(rs, d, table or build_chevalley(rs))


def graded_bracket(g: GradedLieAlgebra, a: RootLike, b: RootLike) -> tuple[int, Root] | None:
    rs = g.rs
    ca, cb = rs.root(a).coords, rs.root(b).coords
    nval = g.table.get(ca, cb)
    if nval is None:
        return None
    s = tuple(x + y for x, y in zip(ca, cb))
    if g.degree(ca) + g.degree(cb) != g.degree(s):
        return None
    return nval, rs.root(s)


def bracket_table(g: GradedLieAlgebra) -> dict[tuple[tuple, tuple], int]:
    """All nonzero graded brackets."""
    out = {}
    for (a, b), nval in g.table.constants.items():
        s = tuple(x + y for x, y in zip(a, b))
        if g.degree(a) + g.degree(b) == g.degree(s):
            out[(a, b)] = nval
    return out


def jacobi_violations(g: GradedLieAlgebra) -> list[tuple[Root, Root, Root]]:
    rs = g.rs
    live = bracket_table(g)

    def br(a, b):
        v = live.get((a, b))
        return None if v is None else (v, tuple(x + y for x, y in zip(a, b)))

    bad = []
    pos = [r.coords for r in rs.positive]
    for a in pos:
        for b in pos:
            ab = tuple(x + y for x, y in zip(a, b))
            for c in pos:
                total = tuple(x + y for x, y in zip(ab, c))
                if not rs.is_positive_root(total):
                    continue
                acc = 0
                for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                    inner = br(y, z)
                    if inner is None:
                        continue
                    outer = br(x, inner[1])
                    if outer is not None:
                        acc += inner[0] * outer[0]
                if acc:
                    bad.append((rs.root(a), rs.root(b), rs.root(c)))
    return bad


def jacobi_check(g: GradedLieAlgebra) -> bool:
    return not jacobi_violations(g)


# -- isomorphism with the stretched subalgebra -------------------------------------------


@dataclass
class IsoReport:
    ok: bool
    pattern_mismatches: list[str] = field(default_factory=list)
    magnitude_mismatches: list[str] = field(default_factory=list)
    signs: dict[tuple, int] | None = None
    brackets: int = 0


def _solve_gf2(nvars: int, equations: list[tuple[int, int]]) -> list[int] | None:
    """Solve sum_{bits of mask} x = rhs over GF(2); one solution or None."""
    pivots: dict[int, tuple[int, int]] = {}
    for mask, rhs in equations:
        for p, (pm, pr) in pivots.items():
            if mask >> p & 1:
                mask ^= pm
                rhs ^= pr
        if mask == 0:
            if rhs:
                return None
            continue
        p = mask.bit_length() - 1
        for q, (qm, qr) in list(pivots.items()):
            if qm >> p & 1:
                pivots[q] = (qm ^ mask, qr ^ rhs)
        pivots[p] = (mask, rhs)
    x = [0] * nvars
    for p, (_, r) in pivots.items():
        x[p] = r  # free variables are 0 and each pivot row only touches free ones besides p
    return x


def verify_laiso(rs: RootSystem, cuts, d: DegreeVector) -> IsoReport:
    c = validate_cuts(rs, cuts)
    cone = dynkin_cone(rs, c)
    if not membership(cone, d, "relint"):
        raise PreconditionError("degree vector is not in the relative interior of the Dynkin cone")
    m = stretch_map(rs, c)
    big = m.target
    g = graded_algebra(rs, d)
    big_table = build_chevalley(big)
    psi = {b.coords: psi_root(m, rs, b).coords for b in rs.positive}
    rep = IsoReport(True)
    equations = []
    for a in rs.positive:
        for b in rs.positive:
            if a == b:
                continue
            left = graded_bracket(g, a, b)
            pa, pb = psi[a.coords], psi[b.coords]
            right = big_table.get(pa, pb)
            if (left is None) != (right is None):
                rep.ok = False
                rep.pattern_mismatches.append(f"[{a}, {b}]: {'zero' if left is None else 'nonzero'} vs image")
                continue
            if left is None:
                continue
            rep.brackets += 1
            s = left[1].coords
            if tuple(x + y for x, y in zip(pa, pb)) != psi[s]:
                rep.ok = False
                rep.pattern_mismatches.append(f"psi({a})+psi({b}) != psi({a}+{b})")
                continue
            if abs(left[0]) != abs(right):
                rep.ok = False
                rep.magnitude_mismatches.append(f"[{a}, {b}]: {left[0]} vs {right}")
                continue
            ix = rs.index
            mask = (1 << ix[a.coords]) ^ (1 << ix[b.coords]) ^ (1 << ix[s])
            equations.append((mask, int(left[0] * right < 0)))
    if rep.ok:
        sol = _solve_gf2(len(rs.positive), equations)
        if sol is None:
            rep.ok = False
        else:
            rep.signs = {r.coords: (-1 if sol[k] else 1) for k, r in enumerate(rs.positive)}
            for (a, b), nval in bracket_table(g).items():
                s = tuple(x + y for x, y in zip(a, b))
                t = rep.signs
                if t[a] * t[b] * nval != t[s] * big_table.get(psi[a], psi[b]):
                    raise InvariantViolation("GF(2) sign solution does not satisfy the brackets")
    return rep
