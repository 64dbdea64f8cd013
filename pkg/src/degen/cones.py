"""The cone of partial abelianisations and its Dynkin subcones.

A degree vector assigns a rational number to each positive root. The
abelianisation cone is cut out by ``d_a + d_b >= d_{a+b}`` for every pair of
positive roots whose sum is a root. A Dynkin cone keeps only the
partial-abelianisation (PA) inequalities selected by a cut set, turns every
other inequality into an equality, and adds the differential-operator (DO)
equalities.

Relative-interior questions are answered by exact linear programming in the
coordinates of the equality locus.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Iterator, Mapping, NewType, Sequence

from degen import lp
from degen.errors import DomainError, InvariantViolation
from degen.linalg import nullspace
from degen.rootsys import (
    Label,
    Root,
    RootLike,
    RootSystem,
    RootSystemId,
    barred,
    build_root_system,
    straight,
)

CutSet = NewType("CutSet", tuple)

GE, EQ = ">=", "="
BASE, PA, DO, OTHER_EQ = "base", "PA", "DO", "other-equality"


# -- cut sets -----------------------------------------------------------------


def cut_bound(rs: RootSystem) -> int:
    return rs.rank - 3 if rs.family == "D" else rs.rank - 1


def validate_cuts(rs: RootSystem, cuts: Iterable[int]) -> CutSet:
    c = tuple(cuts)
    top = cut_bound(rs)
    if any(not isinstance(x, int) for x in c) or list(c) != sorted(set(c)):
        raise DomainError(f"cut set {c} must be strictly increasing integers")
    if c and (c[0] < 1 or c[-1] > top):
        raise DomainError(f"cut set {c} must lie in [1, {top}] for {rs.id}")
    return CutSet(c)


def all_cut_sets(rs: RootSystem) -> Iterator[CutSet]:
    top = cut_bound(rs)
    for size in range(top + 1):
        for c in itertools.combinations(range(1, top + 1), size):
            yield CutSet(c)


# -- degree vectors -----------------------------------------------------------


@dataclass(frozen=True)
class DegreeVector:
    """Exact rational values indexed like ``rs.positive``."""

    system: RootSystemId
    values: tuple[Fraction, ...]

    @classmethod
    def of(cls, rs: RootSystem, values: Sequence) -> "DegreeVector":
        if len(values) != len(rs.positive):
            raise DomainError(f"degree vector needs {len(rs.positive)} entries, got {len(values)}")
        return cls(rs.id, tuple(Fraction(v) for v in values))

    @classmethod
    def from_map(cls, rs: RootSystem, m: Mapping) -> "DegreeVector":
        vals = [None] * len(rs.positive)
        for key, v in m.items():
            vals[rs.index[rs.root(key).coords]] = Fraction(v)
        if any(v is None for v in vals):
            raise DomainError("degree map is not total on the positive roots")
        return cls(rs.id, tuple(vals))

    def __getitem__(self, key) -> Fraction:
        rs = build_root_system(self.system)
        return self.values[rs.index[rs.root(key).coords]]

    def __len__(self):
        return len(self.values)

    def as_map(self) -> dict[str, Fraction]:
        rs = build_root_system(self.system)
        return {str(r.label): v for r, v in zip(rs.positive, self.values)}


def height_point(rs: RootSystem) -> DegreeVector:
    return DegreeVector.of(rs, [rs.height(r) for r in rs.positive])


def constant_point(rs: RootSystem, value=2) -> DegreeVector:
    return DegreeVector.of(rs, [value] * len(rs.positive))


# -- constraints ----------------------------------------------------------------


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[tuple[int, Fraction], ...]  # (root index, coefficient), sorted, nonzero
    relation: str
    tag: str

    def value(self, values: Sequence[Fraction]) -> Fraction:
        return sum((c * values[k] for k, c in self.coeffs), Fraction(0))

    def dense(self, size: int) -> list[Fraction]:
        row = [Fraction(0)] * size
        for k, c in self.coeffs:
            row[k] = c
        return row


def _make(terms: Iterable[tuple[int, int]], relation: str, tag: str) -> Constraint | None:
    acc: dict[int, Fraction] = {}
    for k, c in terms:
        acc[k] = acc.get(k, Fraction(0)) + c
    coeffs = tuple(sorted((k, v) for k, v in acc.items() if v))
    return Constraint(coeffs, relation, tag) if coeffs else None


@dataclass(frozen=True)
class ConeSpec:
    system: RootSystemId
    constraints: tuple[Constraint, ...]
    cuts: CutSet | None = None  # None for the full abelianisation cone

    @property
    def rs(self) -> RootSystem:
        return build_root_system(self.system)

    def inequalities(self) -> list[Constraint]:
        return [c for c in self.constraints if c.relation == GE]

    def equalities(self) -> list[Constraint]:
        return [c for c in self.constraints if c.relation == EQ]

    def to_json(self) -> str:
        rs = self.rs
        return json.dumps(
            {
                "family": self.system.family,
                "rank": self.system.rank,
                "cuts": None if self.cuts is None else list(self.cuts),
                "constraints": [
                    {
                        "coefficients": [
                            [str(rs.positive[k].label), [c.numerator, c.denominator]]
                            for k, c in con.coeffs
                        ],
                        "relation": con.relation,
                        "tag": con.tag,
                    }
                    for con in self.constraints
                ],
            },
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str) -> "ConeSpec":
        obj = json.loads(text)
        rs = build_root_system(obj["family"], obj["rank"])
        cons = []
        for c in obj["constraints"]:
            if c["relation"] not in (GE, EQ):
                raise DomainError(f"bad relation {c['relation']!r}")
            coeffs = tuple(
                sorted((rs.index[rs.root(lab).coords], Fraction(p, q)) for lab, (p, q) in c["coefficients"])
            )
            cons.append(Constraint(coeffs, c["relation"], c["tag"]))
        cuts = obj.get("cuts")
        return cls(rs.id, tuple(cons), None if cuts is None else CutSet(tuple(cuts)))


def summable_pairs(rs: RootSystem) -> list[tuple[Root, Root, Root]]:
    """Unordered pairs (a, b) of positive roots with a + b positive, as (a, b, a+b)."""
    out = []
    pos = rs.positive
    for x in range(len(pos)):
        for y in range(x + 1, len(pos)):
            s = tuple(p + q for p, q in zip(pos[x].coords, pos[y].coords))
            if rs.is_positive_root(s):
                out.append((pos[x], pos[y], rs.root(s)))
    return out


def _pair_key(rs: RootSystem, a: RootLike, b: RootLike) -> frozenset:
    return frozenset((rs.coords(a), rs.coords(b)))


def _eq1(rs: RootSystem, a: Root, b: Root, g: Root, relation: str, tag: str) -> Constraint:
    ix = rs.index
    return _make([(ix[a.coords], 1), (ix[b.coords], 1), (ix[g.coords], -1)], relation, tag)


def abelianisation_cone(rs: RootSystem) -> ConeSpec:
    return ConeSpec(rs.id, tuple(_eq1(rs, a, b, g, GE, BASE) for a, b, g in summable_pairs(rs)))


# -- Dynkin cone label patterns -------------------------------------------------------


def _paper_root(rs: RootSystem, lab: Label) -> Root | None:
    """The root with this label, or None when the label is outside the ranges
    the labelling conventions allow (these instances are skipped)."""
    if rs.family == "D" and lab == straight(rs.rank - 1, rs.rank):
        return None  # the simple root e_{n-1}+e_n carries no alpha_{i,j} name
    try:
        return rs.root(lab)
    except DomainError:
        return None


def _tail(rs: RootSystem, j: int) -> list[tuple[bool, int]]:
    """Values of l in the first PA bullet, following the type's total order."""
    n, fam = rs.rank, rs.family
    if fam == "A":
        return [(False, m) for m in range(j + 1, n + 1)]
    up = [(False, m) for m in range(j + 1, n + 1)]
    if fam == "B":
        return up + [(True, m) for m in range(n, j + 1, -1)]
    if fam == "C":
        return up + [(True, m) for m in range(n - 1, j, -1)]
    return up + [(True, m) for m in range(n - 1, j + 1, -1)]


def pa_label_triples(rs: RootSystem, cuts: CutSet) -> list[tuple[Label, Label, Label]]:
    """(PA) instances (a, b, a+b) as label triples, literally from the bullets."""
    n, fam = rs.rank, rs.family
    out = []
    for j in cuts:
        for i in range(1, j + 1):
            for bar, l in _tail(rs, j):
                out.append((straight(i, j), Label(bar, j + 1, l), Label(bar, i, l)))
        if fam in ("B", "D"):
            for i in range(1, j + 1):
                for k in range(i + 1, j + 1):
                    out.append((straight(i, j), barred(k, j + 1), barred(i, k)))
                for k in range(1, i):
                    out.append((straight(i, j), barred(k, j + 1), barred(k, i)))
        elif fam == "C":
            for i in range(1, j + 2):
                for l in range(i, j + 2):
                    out.append((straight(i, j), barred(l, j + 1), barred(i, l)))
                for l in range(1, i + 1):
                    out.append((straight(i, j), barred(l, j + 1), barred(l, i)))
    return out


def pa_triples(rs: RootSystem, cuts: CutSet) -> list[tuple[Root, Root, Root]]:
    """Deduplicated (PA) instances whose labels all exist, as roots."""
    seen, out = set(), []
    for la, lb, lg in pa_label_triples(rs, cuts):
        a, b, g = (_paper_root(rs, x) for x in (la, lb, lg))
        if a is None or b is None or g is None:
            continue
        if tuple(p + q for p, q in zip(a.coords, b.coords)) != g.coords:
            raise InvariantViolation(f"PA pattern {la}+{lb} != {lg} in {rs.id}")
        key = _pair_key(rs, a, b)
        if key not in seen:
            seen.add(key)
            out.append((a, b, g))
    return out


def do_label_rows(rs: RootSystem) -> list[list[tuple[Label, int]]]:
    """(DO) equalities as signed label combinations (sum = 0)."""
    n, fam = rs.rank, rs.family
    S, B = straight, barred
    rows = []
    for i, j, k, l in itertools.product(range(1, n + 1), repeat=4):
        if i < j <= k < l:
            rows.append([(S(i, k), 1), (S(j, l), 1), (S(i, l), -1), (S(j, k), -1)])
    if fam == "A":
        return rows
    for i, j, k, l in itertools.product(range(1, n + 1), repeat=4):
        if i < j <= k and j <= l:
            rows.append([(B(i, k), 1), (S(j, l), 1), (S(i, l), -1), (B(j, k), -1)])
    top = {"B": n, "C": n - 1, "D": n - 2}[fam]
    for i, j, k, l in itertools.combinations(range(1, top + 1), 4):
        first = [(B(i, j), 1), (B(k, l), 1)]
        rows.append(first + [(B(i, k), -1), (B(j, l), -1)])
        rows.append(first + [(B(i, l), -1), (B(j, k), -1)])
    return rows


def do_constraints(rs: RootSystem) -> list[Constraint]:
    out = []
    for row in do_label_rows(rs):
        roots = [(_paper_root(rs, lab), c) for lab, c in row]
        if any(r is None for r, _ in roots):
            continue
        con = _make(((rs.index[r.coords], c) for r, c in roots), EQ, DO)
        if con is not None and con not in out:
            out.append(con)
    return out


@lru_cache(maxsize=None)
def _dynkin_cone(rid: RootSystemId, cuts: CutSet) -> ConeSpec:
    rs = build_root_system(rid)
    pa = {_pair_key(rs, a, b) for a, b, _ in pa_triples(rs, cuts)}
    cons = []
    for a, b, g in summable_pairs(rs):
        if _pair_key(rs, a, b) in pa:
            cons.append(_eq1(rs, a, b, g, GE, PA))
        else:
            cons.append(_eq1(rs, a, b, g, EQ, OTHER_EQ))
    cons.extend(do_constraints(rs))
    return ConeSpec(rid, tuple(cons), cuts)


def dynkin_cone(rs: RootSystem, cuts: Iterable[int]) -> ConeSpec:
    return _dynkin_cone(rs.id, validate_cuts(rs, cuts))


# -- membership and relative interior -------------------------------------------------


def _check_dims(cone: ConeSpec, d: DegreeVector | Sequence) -> tuple[Fraction, ...]:
    vals = d.values if isinstance(d, DegreeVector) else tuple(Fraction(x) for x in d)
    if isinstance(d, DegreeVector) and d.system != cone.system:
        raise DomainError(f"degree vector for {d.system} used with a cone of {cone.system}")
    if len(vals) != len(cone.rs.positive):
        raise DomainError(f"degree vector has {len(vals)} entries, cone needs {len(cone.rs.positive)}")
    return vals


@dataclass(frozen=True)
class _Reduced:
    basis: tuple[tuple[Fraction, ...], ...]  # equality-locus basis vectors (columns of N)
    rows: tuple[tuple[Fraction, ...], ...]  # each inequality in y-coordinates


@lru_cache(maxsize=None)
def _reduce(cone: ConeSpec) -> _Reduced:
    size = len(cone.rs.positive)
    eqs = [c.dense(size) for c in cone.equalities()]
    basis = nullspace(eqs, size) if eqs else [
        [Fraction(int(a == b)) for a in range(size)] for b in range(size)
    ]
    rows = []
    for c in cone.inequalities():
        rows.append(tuple(sum((v * vec[k] for k, v in c.coeffs), Fraction(0)) for vec in basis))
    return _Reduced(tuple(tuple(v) for v in basis), tuple(rows))


@lru_cache(maxsize=None)
def implied_equalities(cone: ConeSpec) -> frozenset[int]:
    """Positions (within ``cone.inequalities()``) of inequalities that hold with
    equality on the whole cone.

    One LP decides all of them: maximize sum(s_k) with 0 <= s_k <= 1 and
    row_k(d) >= s_k. Since the cone is closed under positive scaling, an
    optimum has s_k = 1 exactly for the inequalities that are not implied.
    """
    red = _reduce(cone)
    r = len(red.basis)
    implied = {k for k, row in enumerate(red.rows) if not any(row)}
    distinct: dict[tuple, list[int]] = {}
    for k, row in enumerate(red.rows):
        if k not in implied:
            distinct.setdefault(row, []).append(k)
    keys = list(distinct)
    K = len(keys)
    if K == 0:
        return frozenset(implied)
    # variables: y+ (r), y- (r), s (K)
    a_ub, b_ub = [], []
    for q, row in enumerate(keys):
        s = [Fraction(0)] * K
        s[q] = Fraction(1)
        a_ub.append([-x for x in row] + list(row) + s)
        b_ub.append(0)
        a_ub.append([Fraction(0)] * (2 * r) + s)
        b_ub.append(1)
    res = lp.maximize([0] * (2 * r) + [1] * K, a_ub, b_ub)
    if res.status != lp.OPTIMAL:
        raise InvariantViolation(f"implied-equality LP ended {res.status}")
    s_vals = res.x[2 * r:]
    for q, row in enumerate(keys):
        if s_vals[q] != 1:
            if s_vals[q] != 0:
                raise InvariantViolation("implied-equality LP optimum is not 0/1")
            implied.update(distinct[row])
    return frozenset(implied)


def membership(cone: ConeSpec, d: DegreeVector | Sequence, mode: str = "closure") -> bool:
    if mode not in ("closure", "relint"):
        raise DomainError(f"unknown membership mode {mode!r}")
    vals = _check_dims(cone, d)
    for c in cone.equalities():
        if c.value(vals) != 0:
            return False
    ineqs = cone.inequalities()
    if mode == "closure":
        return all(c.value(vals) >= 0 for c in ineqs)
    implied = implied_equalities(cone)
    for k, c in enumerate(ineqs):
        v = c.value(vals)
        if v < 0 or (k in implied and v != 0) or (k not in implied and v == 0):
            return False
    return True


def violated(cone: ConeSpec, d: DegreeVector | Sequence) -> list[Constraint]:
    vals = _check_dims(cone, d)
    out = []
    for c in cone.constraints:
        v = c.value(vals)
        if (c.relation == EQ and v != 0) or (c.relation == GE and v < 0):
            out.append(c)
    return out


@lru_cache(maxsize=None)
def _relint_point(cone: ConeSpec) -> DegreeVector:
    rs = cone.rs
    red = _reduce(cone)
    r = len(red.basis)
    size = len(rs.positive)
    bound = 4 * max(rs.height(b) for b in rs.positive)
    implied = implied_equalities(cone)
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    # variables: y+ (r), y- (r), s
    for p in range(size):
        col = [vec[p] for vec in red.basis]
        a_ub.append([-x for x in col] + col + [0])
        b_ub.append(0)
        a_ub.append(col + [-x for x in col] + [0])
        b_ub.append(bound)
    for k, row in enumerate(red.rows):
        if k in implied:
            a_eq.append(list(row) + [-x for x in row] + [0])
            b_eq.append(0)
        else:
            a_ub.append([-x for x in row] + list(row) + [1])
            b_ub.append(0)
    a_ub.append([0] * (2 * r) + [1])
    b_ub.append(1)
    res = lp.maximize([0] * (2 * r) + [1], a_ub, b_ub, a_eq, b_eq)
    if res.status != lp.OPTIMAL:
        raise InvariantViolation(f"relint LP ended {res.status}")
    if len(implied) < len(red.rows) and res.value <= 0:
        raise InvariantViolation(f"cone for {rs.id} {cone.cuts} has an empty relative interior")
    y = [a - b for a, b in zip(res.x[:r], res.x[r : 2 * r])]
    d = [sum((yy * vec[p] for yy, vec in zip(y, red.basis)), Fraction(0)) for p in range(size)]
    scale = lcm(*(v.denominator for v in d))
    d = [v * scale for v in d]
    if not any(d):
        d = list(height_point(rs).values)
    return DegreeVector.of(rs, d)


def relint_point(cone: ConeSpec) -> DegreeVector:
    """A point of the relative interior, from the max-common-slack LP over the
    box 0 <= d <= 4 * max height, scaled to be integral."""
    d = _relint_point(cone)
    if not membership(cone, d, "relint"):
        raise InvariantViolation("relint LP returned a point outside the relative interior")
    return d


def type_a_relint_point(rs: RootSystem, cuts: Iterable[int]) -> DegreeVector:
    """d_b = ht(b) - #{c in cuts : c, c+1 both in the simple-root support of b}."""
    if rs.family != "A":
        raise DomainError("closed-form relint point exists only for type A")
    c = validate_cuts(rs, cuts)
    vals = []
    for b in rs.positive:
        k = rs.simple_coefficients(b)
        supp = {i + 1 for i, x in enumerate(k) if x}
        vals.append(rs.height(b) - sum(1 for x in c if x in supp and x + 1 in supp))
    return DegreeVector.of(rs, vals)


def facet_witness(rs: RootSystem, a: RootLike, b: RootLike, g: RootLike) -> DegreeVector:
    """The vector 2 - e_a - e_b + e_g for a summable triple a + b = g."""
    ra, rb, rg = rs.root(a), rs.root(b), rs.root(g)
    if ra == rb or tuple(p + q for p, q in zip(ra.coords, rb.coords)) != rg.coords:
        raise DomainError(f"{ra} + {rb} != {rg}")
    vals = [2] * len(rs.positive)
    vals[rs.index[ra.coords]] -= 1
    vals[rs.index[rb.coords]] -= 1
    vals[rs.index[rg.coords]] += 1
    return DegreeVector.of(rs, vals)


def random_cone_point(cone: ConeSpec, rng) -> DegreeVector:
    """A random rational point of the relative interior, drawn from ``rng``
    (a ``random.Random``).

    For the abelianisation cone: r*h + c*1 + v with c > 1 and v in [0, 1]^{roots},
    which satisfies every inequality strictly. For a Dynkin cone: a positive
    combination of the relint point and the height point."""
    rs = cone.rs
    frac = lambda: Fraction(rng.randint(0, 12), rng.randint(1, 4))  # noqa: E731
    h = height_point(rs).values
    if cone.cuts is None:
        r, c = frac(), Fraction(9, 8) + frac()
        vals = [r * a + c + Fraction(rng.randint(0, 8), 8) for a in h]
    else:
        r = relint_point(cone).values
        s, t = 1 + frac(), frac()
        vals = [s * a + t * b for a, b in zip(r, h)]
    d = DegreeVector.of(rs, vals)
    if not membership(cone, d, "relint"):
        raise InvariantViolation("random cone point left the relative interior")
    return d
