"""Stretching a Dynkin diagram along a cut set.

For a cut set c = {c_1 < ... < c_t}, the node map sigma: [n] -> [n+t] skips
exactly c_1+1, c_2+2, ..., c_t+t. It induces

    psi   positive roots of rank n  ->  positive roots of rank n+t
    pi    coefficient restriction back to the root monoid (a partial section)
    Psi   dominant weights of rank n -> dominant weights of rank n+t
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, NewType, Sequence

from degen.cones import CutSet, validate_cuts
from degen.errors import DomainError, InvariantViolation
from degen.rootsys import Root, RootLike, RootSystem, build_root_system

WeightVector = NewType("WeightVector", tuple)


def weight(coords: Iterable[int]) -> WeightVector:
    w = tuple(coords)
    if any(not isinstance(x, int) or x < 0 for x in w):
        raise DomainError(f"weight {w} is not dominant integral")
    return WeightVector(w)


@dataclass(frozen=True)
class StretchMap:
    family: str
    n: int
    cuts: CutSet
    sigma: tuple[int, ...]  # sigma[i-1] = sigma(i)
    missing: frozenset[int] = field(compare=False)

    @property
    def t(self) -> int:
        return len(self.cuts)

    def __call__(self, i: int) -> int:
        """sigma(i), with sigma(0) = 0."""
        return 0 if i == 0 else self.sigma[i - 1]

    @property
    def source(self) -> RootSystem:
        return build_root_system(self.family, self.n)

    @property
    def target(self) -> RootSystem:
        return build_root_system(self.family, self.n + self.t)


@lru_cache(maxsize=None)
def _stretch_map(family: str, n: int, cuts: CutSet) -> StretchMap:
    sigma = tuple(i + sum(1 for c in cuts if c < i) for i in range(1, n + 1))
    missing = frozenset(range(1, n + len(cuts) + 1)) - frozenset(sigma)
    if missing != frozenset(c + k for k, c in enumerate(cuts, start=1)):
        raise InvariantViolation(f"sigma for {cuts} misses {sorted(missing)}")
    return StretchMap(family, n, cuts, sigma, missing)


def stretch_map(rs: RootSystem, cuts: Iterable[int]) -> StretchMap:
    return _stretch_map(rs.family, rs.rank, validate_cuts(rs, cuts))


# -- psi ---------------------------------------------------------------------------


def psi_coords(m: StretchMap, coords: Sequence[int]) -> tuple[int, ...]:
    """psi on epsilon coordinates: a positive entry at p moves to sigma(p), a
    negative entry at q (the e_{j+1} of e_i - e_{j+1}) moves to sigma(q-1)+1."""
    tgt = m.target
    out = [0] * tgt.dim
    for p, x in enumerate(coords, start=1):
        if x > 0:
            out[m(p) - 1] += x
        elif x < 0:
            out[m(p - 1)] += x
    return tuple(out)


def psi_root(m: StretchMap, rs: RootSystem, beta: RootLike) -> Root:
    r = rs.root(beta)
    img = psi_coords(m, r.coords)
    tgt = m.target
    if not tgt.is_positive_root(img):
        raise InvariantViolation(f"psi({r}) = {img} is not a positive root of {tgt.id}")
    return tgt.root(img)


def psi_root_by_definition(m: StretchMap, rs: RootSystem, beta: RootLike) -> Root:
    """psi from the simple-root expansion: the simple roots before the last one
    in the support stretch over the inserted nodes, the last one does not."""
    k = rs.simple_coefficients(beta)
    last = max(i for i, x in enumerate(k, start=1) if x)
    tgt = m.target
    coeffs = [0] * tgt.rank
    for i in range(1, last):
        for p in range(m(i), m(i + 1)):
            coeffs[p - 1] += k[i - 1]
    coeffs[m(last) - 1] += k[last - 1]
    return tgt.root(tgt.from_simple_coefficients(coeffs))


def image_set(m: StretchMap, rs: RootSystem) -> frozenset[Root]:
    imgs = [psi_root(m, rs, b) for b in rs.positive]
    out = frozenset(imgs)
    if len(out) != len(rs.positive):
        raise InvariantViolation("psi is not injective")
    return out


# -- verification ------------------------------------------------------------------


@dataclass
class Report:
    ok: bool
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    def fail(self, msg: str) -> None:
        self.ok = False
        self.failures.append(msg)


def closure_and_convexity_check(
    m: StretchMap, rs: RootSystem, psi_map: Mapping[Root, Root] | None = None
) -> Report:
    """(a) psi(b1)+psi(b2) a root forces b1+b2 a root with matching image;
    (b) no two roots outside the image sum into the image.

    ``psi_map`` overrides psi (used for fault injection)."""
    tgt = m.target
    psi = dict(psi_map) if psi_map is not None else {b: psi_root(m, rs, b) for b in rs.positive}
    rep = Report(True)
    pos = rs.positive
    for x in range(len(pos)):
        for y in range(x, len(pos)):
            b1, b2 = pos[x], pos[y]
            s = tuple(p + q for p, q in zip(psi[b1].coords, psi[b2].coords))
            rep.checked += 1
            if not tgt.is_positive_root(s):
                continue
            bs = tuple(p + q for p, q in zip(b1.coords, b2.coords))
            if not rs.is_positive_root(bs):
                rep.fail(f"psi({b1})+psi({b2}) is a root but {b1}+{b2} is not")
            elif psi[rs.root(bs)].coords != s:
                rep.fail(f"psi({b1})+psi({b2}) != psi({b1}+{b2})")
    image = {r.coords for r in psi.values()}
    outside = [r for r in tgt.positive if r.coords not in image]
    for x in range(len(outside)):
        for y in range(x, len(outside)):
            s = tuple(p + q for p, q in zip(outside[x].coords, outside[y].coords))
            rep.checked += 1
            if s in image:
                rep.fail(f"{outside[x]}+{outside[y]} lands in the image")
    return rep


# -- pi -----------------------------------------------------------------------------


@dataclass(frozen=True)
class PiResult:
    """kind: 'root' (value is a positive root), 'two-short-B' or 'sum-pair-D'
    (value is 2e_i, index i), or 'zero' (supported on inserted nodes only)."""

    kind: str
    coords: tuple
    index: int | None = None
    root: Root | None = None


def pi_coefficients(m: StretchMap, beta_t: RootLike) -> tuple:
    tgt = m.target
    k = tgt.simple_coefficients(beta_t)
    return tuple(k[m(i) - 1] for i in range(1, m.n + 1))


def _trio_index(m: StretchMap, beta_t: Root) -> int | None:
    """i when beta_t = alpha~_{sigma(i)-1, bar sigma(i)} with sigma(i)-1 != sigma(i-1)."""
    if m.family not in ("B", "D"):
        return None
    for i in range(1, m.n + 1):
        s = m(i)
        if s - 1 == m(i - 1) or s - 1 < 1:
            continue
        c = [0] * m.target.dim
        c[s - 2] += 1
        c[s - 1] += 1
        if tuple(c) == beta_t.coords:
            return i
    return None


def pi_section(m: StretchMap, beta_t: RootLike) -> PiResult:
    tgt, src = m.target, m.source
    bt = tgt.root(beta_t)
    coeffs = pi_coefficients(m, bt)
    coords = src.from_simple_coefficients(coeffs)
    trio = _trio_index(m, bt)
    if src.is_positive_root(coords):
        if trio is not None:
            raise InvariantViolation(f"pi({bt}) is a root but matches the exceptional pattern")
        return PiResult("root", coords, root=src.root(coords))
    if not any(coeffs):
        return PiResult("zero", coords)
    if trio is None:
        raise InvariantViolation(f"pi({bt}) = {coords} falls in no known case")
    expect = tuple(2 if p == trio else 0 for p in range(1, src.dim + 1))
    if coords != expect:
        raise InvariantViolation(f"pi({bt}) = {coords}, expected 2e_{trio}")
    return PiResult("two-short-B" if m.family == "B" else "sum-pair-D", coords, index=trio)


# -- Psi ----------------------------------------------------------------------------


def psi_weight(m: StretchMap, lam: Sequence[int]) -> WeightVector:
    lam = weight(lam)
    if len(lam) != m.n:
        raise DomainError(f"weight needs {m.n} coordinates")
    out = [0] * (m.n + m.t)
    for j, x in enumerate(lam, start=1):
        out[m(j) - 1] = x
    return WeightVector(tuple(out))


def ideal_exponents(m: StretchMap, lam: Sequence[int]) -> dict[Root, int]:
    """beta~ -> (Psi(lam), beta~^vee) + 1 over the image of psi."""
    big = psi_weight(m, lam)
    tgt, src = m.target, m.source
    out = {}
    for b in image_set(m, src):
        v = tgt.weight_pairing(big, b)
        if v.denominator != 1:
            raise InvariantViolation("non-integral pairing with a dominant weight")
        out[b] = int(v) + 1
    return out


def s_set(m: StretchMap, beta_t: RootLike) -> frozenset[Root]:
    """{a~ outside the image : -a~ + k beta~ in the image for some k >= 1}."""
    tgt = m.target
    bt = tgt.root(beta_t)
    image = {r.coords for r in image_set(m, m.source)}
    out = set()
    for a in tgt.positive:
        if a.coords in image:
            continue
        for k in (1, 2):
            if tuple(k * y - x for x, y in zip(a.coords, bt.coords)) in image:
                out.add(a)
    return frozenset(out)


def psi_property_report(m: StretchMap, rs: RootSystem, lam_bound: int = 3) -> Report:
    """Root lengths, pi o psi = id, additivity of Psi and both pairing identities
    over the weight grid with coordinates <= lam_bound."""
    from itertools import product

    tgt = m.target
    rep = Report(True)
    for b in rs.positive:
        img = psi_root(m, rs, b)
        rep.checked += 3
        if tgt.inner(img.coords, img.coords) != rs.inner(b.coords, b.coords):
            rep.fail(f"psi({b}) changes the root length")
        if img != psi_root_by_definition(m, rs, b):
            rep.fail(f"psi({b}) disagrees with the simple-root definition")
        back = pi_section(m, img)
        if back.kind != "root" or back.root != b:
            rep.fail(f"pi(psi({b})) = {back.coords}")
    inserted = [tgt.simple[p - 1] for p in sorted(m.missing)]
    grid = list(product(range(lam_bound + 1), repeat=m.n))
    images = {b: psi_root(m, rs, b) for b in rs.positive}
    # <varpi_k, b^vee> rows; pairings are linear in the weight
    src_rows = {b: _pairing_row(rs, b) for b in rs.positive}
    tgt_rows = {b: _pairing_row(tgt, img) for b, img in images.items()}
    ins_rows = [_pairing_row(tgt, a) for a in inserted]
    for lam in grid:
        big = psi_weight(m, lam)
        for b in rs.positive:
            rep.checked += 1
            if _dot(big, tgt_rows[b]) != _dot(lam, src_rows[b]):
                rep.fail(f"(Psi({lam}), psi({b})^vee) != ({lam}, {b}^vee)")
        for a, row in zip(inserted, ins_rows):
            rep.checked += 1
            if _dot(big, row) != 0:
                rep.fail(f"(Psi({lam}), {a}^vee) != 0")
    unit = [tuple(1 if p == k else 0 for p in range(m.n)) for k in range(m.n)]
    for lam in grid:
        for u in unit:
            rep.checked += 1
            s = tuple(x + y for x, y in zip(lam, u))
            if psi_weight(m, s) != tuple(x + y for x, y in zip(psi_weight(m, lam), psi_weight(m, u))):
                rep.fail(f"Psi is not additive at {lam} + {u}")
    return rep


def _pairing_row(rs: RootSystem, b: Root) -> tuple[int, ...]:
    row = tuple(rs.pairing(w, b) for w in rs.fundamental_weights)
    if any(x.denominator != 1 for x in row):
        raise InvariantViolation(f"non-integral pairing row for {b}")
    return tuple(int(x) for x in row)


def _dot(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, y))
