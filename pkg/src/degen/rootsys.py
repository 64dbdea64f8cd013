"""Classical root systems A_n, B_n, C_n, D_n in epsilon coordinates.

Positive roots carry the labels alpha_{i,j} ("straight") and alpha_{i,jbar}
("barred"):

    A_n  alpha_{i,j}    = e_i - e_{j+1}                   1 <= i <= j <= n
    B_n  alpha_{i,j}    = e_i - e_{j+1}  (j < n), e_i (j = n)
         alpha_{i,jbar} = e_i + e_j                       1 <= i < j <= n
    C_n  alpha_{i,j}    = e_i - e_{j+1}                   1 <= i <= j <= n-1
         alpha_{i,jbar} = e_i + e_j                       1 <= i <= j <= n
    D_n  alpha_{i,j}    = e_i - e_{j+1}                   1 <= i <= j <= n-1
         alpha_{i,n}    = e_i + e_n                       1 <= i <= n-1
         alpha_{i,jbar} = e_i + e_j                       1 <= i < j <= n-1

In type C, alpha_{i,n} and alpha_{i,nbar} name the same root; the barred
form is canonical. In type D the simple root alpha_n = e_{n-1} + e_n is
alpha_{n-1,n}.

Inner product: long roots have squared length 4 in B and C (short 2), all
roots have squared length 2 in A and D.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence, Union

from degen.errors import DomainError, InvalidRankError

FAMILIES = ("A", "B", "C", "D")
MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}

Coords = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class RootSystemId:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or self.rank < MIN_RANK[self.family]:
            raise InvalidRankError(
                f"type {self.family} needs rank >= {MIN_RANK[self.family]}, got {self.rank}"
            )

    def __str__(self):
        return f"{self.family}{self.rank}"


@dataclass(frozen=True, order=True)
class Label:
    barred: bool
    i: int
    j: int

    def __str__(self):
        return f"{self.i},{self.j}b" if self.barred else f"{self.i},{self.j}"

    @classmethod
    def parse(cls, text: str) -> "Label":
        m = re.fullmatch(r"\s*(\d+)\s*,\s*(\d+)\s*(b?)\s*", text)
        if not m:
            raise DomainError(f"cannot parse root label {text!r}")
        return cls(bool(m.group(3)), int(m.group(1)), int(m.group(2)))


def straight(i: int, j: int) -> Label:
    return Label(False, i, j)


def barred(i: int, j: int) -> Label:
    return Label(True, i, j)


@dataclass(frozen=True)
class Root:
    coords: Coords
    label: Label | None = field(default=None, compare=False)

    def __str__(self):
        return f"a({self.label})" if self.label else str(self.coords)

    def __neg__(self) -> Coords:
        return tuple(-x for x in self.coords)


RootLike = Union[Root, Sequence[int]]


def _unit(dim: int, *terms: tuple[int, int]) -> Coords:
    v = [0] * dim
    for idx, c in terms:
        v[idx - 1] += c
    return tuple(v)


def _label_table(family: str, n: int) -> list[tuple[Label, Coords]]:
    dim = n + 1 if family == "A" else n
    out = []
    if family == "A":
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                out.append((straight(i, j), _unit(dim, (i, 1), (j + 1, -1))))
    elif family == "B":
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                c = _unit(dim, (i, 1)) if j == n else _unit(dim, (i, 1), (j + 1, -1))
                out.append((straight(i, j), c))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                out.append((barred(i, j), _unit(dim, (i, 1), (j, 1))))
    elif family == "C":
        for i in range(1, n):
            for j in range(i, n):
                out.append((straight(i, j), _unit(dim, (i, 1), (j + 1, -1))))
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                out.append((barred(i, j), _unit(dim, (i, 1), (j, 1))))
    else:
        for i in range(1, n):
            for j in range(i, n):
                out.append((straight(i, j), _unit(dim, (i, 1), (j + 1, -1))))
            out.append((straight(i, n), _unit(dim, (i, 1), (n, 1))))
        for i in range(1, n):
            for j in range(i + 1, n):
                out.append((barred(i, j), _unit(dim, (i, 1), (j, 1))))
    return out


class RootSystem:
    """Positive roots, simple roots, fundamental weights and the inner product
    of one classical root system. Immutable after construction."""

    def __init__(self, rid: RootSystemId):
        self.id = rid
        self.family = rid.family
        self.rank = n = rid.rank
        self.dim = n + 1 if self.family == "A" else n
        self._scale = 2 if self.family == "B" else 1
        table = _label_table(self.family, n)
        self.positive: tuple[Root, ...] = tuple(Root(c, lab) for lab, c in table)
        self._by_coords = {r.coords: r for r in self.positive}
        self._by_label = {r.label: r for r in self.positive}
        if self.family == "C":
            for i in range(1, n + 1):
                self._by_label.setdefault(straight(i, n), self._by_label[barred(i, n)])
        self.index = {r.coords: k for k, r in enumerate(self.positive)}
        simple = [self._by_label[straight(i, i)] for i in range(1, n)]
        if self.family == "A":
            simple.append(self._by_label[straight(n, n)])
        elif self.family == "B":
            simple.append(self._by_label[straight(n, n)])
        elif self.family == "C":
            simple.append(self._by_label[barred(n, n)])
        else:
            simple.append(self._by_label[straight(n - 1, n)])
        self.simple: tuple[Root, ...] = tuple(simple)
        self.all_coords = frozenset(self._by_coords) | frozenset(
            tuple(-x for x in c) for c in self._by_coords
        )
        self._coeffs = {r.coords: self._expand(r.coords) for r in self.positive}

    def __repr__(self):
        return f"RootSystem({self.id})"

    # -- lookups -------------------------------------------------------------

    def coords(self, x: RootLike | Label | str) -> Coords:
        if isinstance(x, (str, Label)):
            return self.root(x).coords
        c = x.coords if isinstance(x, Root) else tuple(x)
        if len(c) != self.dim:
            raise DomainError(f"{c} has length {len(c)}, expected {self.dim}")
        return c

    def root(self, x: RootLike | Label | str) -> Root:
        """The positive root named by a Label, label string, Root or coordinates."""
        if isinstance(x, str):
            x = Label.parse(x)
        if isinstance(x, Label):
            try:
                return self._by_label[x]
            except KeyError:
                raise DomainError(f"{x} is not a label of {self.id}") from None
        c = self.coords(x)
        try:
            return self._by_coords[c]
        except KeyError:
            raise DomainError(f"{c} is not a positive root of {self.id}") from None

    def is_positive_root(self, x: RootLike) -> bool:
        return tuple(x.coords if isinstance(x, Root) else x) in self._by_coords

    def is_root(self, x: RootLike) -> bool:
        return tuple(x.coords if isinstance(x, Root) else x) in self.all_coords

    def label(self, x: RootLike) -> Label:
        return self.root(x).label

    def __len__(self):
        return len(self.positive)

    def __iter__(self):
        return iter(self.positive)

    def __contains__(self, x):
        return self.is_positive_root(x)

    # -- bilinear form -------------------------------------------------------

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        return Fraction(self._scale) * sum(Fraction(a) * b for a, b in zip(x, y))

    def coroot(self, x: RootLike) -> tuple[Fraction, ...]:
        c = x.coords if isinstance(x, Root) else tuple(x)
        nn = self.inner(c, c)
        return tuple(2 * Fraction(a) / nn for a in c)

    def pairing(self, weight: Sequence, x: RootLike) -> Fraction:
        """<weight, x^vee> for a weight given in epsilon coordinates."""
        c = x.coords if isinstance(x, Root) else tuple(x)
        return 2 * self.inner(weight, c) / self.inner(c, c)

    @cached_property
    def fundamental_weights(self) -> tuple[tuple[Fraction, ...], ...]:
        n, dim, half = self.rank, self.dim, Fraction(1, 2)
        out = []
        for k in range(1, n + 1):
            v = [Fraction(1) if p < k else Fraction(0) for p in range(dim)]
            if self.family == "B" and k == n:
                v = [half] * n
            elif self.family == "D" and k == n - 1:
                v = [half] * (n - 1) + [-half]
            elif self.family == "D" and k == n:
                v = [half] * n
            out.append(tuple(v))
        return tuple(out)

    @cached_property
    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        """cartan_matrix[i][j] = <alpha_j, alpha_i^vee>."""
        return tuple(
            tuple(int(self.pairing(aj.coords, ai)) for aj in self.simple) for ai in self.simple
        )

    @cached_property
    def weight_pairing_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        """[i][j] = (varpi_i, alpha_j^vee); the identity for a correct build."""
        return tuple(
            tuple(self.pairing(w, a) for a in self.simple) for w in self.fundamental_weights
        )

    def weight_to_epsilon(self, lam: Sequence[int]) -> tuple[Fraction, ...]:
        """Fundamental-weight coordinates to epsilon coordinates."""
        if len(lam) != self.rank:
            raise DomainError(f"weight {tuple(lam)} needs {self.rank} coordinates")
        out = [Fraction(0)] * self.dim
        for c, w in zip(lam, self.fundamental_weights):
            if c:
                for p in range(self.dim):
                    out[p] += c * w[p]
        return tuple(out)

    def weight_pairing(self, lam: Sequence[int], x: RootLike) -> Fraction:
        """<lambda, x^vee> for lambda in fundamental-weight coordinates."""
        return self.pairing(self.weight_to_epsilon(lam), x)

    # -- simple-root expansions ----------------------------------------------

    def _expand(self, c: Coords) -> tuple[Fraction, ...]:
        n, fam = self.rank, self.family
        partial = []
        s = Fraction(0)
        for x in c[:n]:
            s += x
            partial.append(s)
        k = list(partial)
        if fam == "C":
            k[n - 1] = partial[n - 1] / 2
        elif fam == "D":
            k[n - 2] = (partial[n - 2] - c[n - 1]) / 2
            k[n - 1] = (partial[n - 2] + c[n - 1]) / 2
        return tuple(k)

    def simple_coefficients(self, x: RootLike) -> tuple:
        """Coefficients of x in the simple roots (ints when integral)."""
        c = self.coords(x)
        k = self._coeffs.get(c) or self._expand(c)
        return tuple(int(a) if a.denominator == 1 else a for a in k)

    def from_simple_coefficients(self, k: Sequence) -> Coords:
        v = [Fraction(0)] * self.dim
        for a, r in zip(k, self.simple):
            for p, x in enumerate(r.coords):
                v[p] += a * x
        return tuple(int(a) if a.denominator == 1 else a for a in v)

    def height(self, x: RootLike) -> int:
        return int(sum(self.simple_coefficients(x)))

    def support(self, x: RootLike) -> frozenset[int]:
        """{i : (varpi_i, x^vee) != 0}, 1-based."""
        cv = self.coroot(x)
        return frozenset(
            i + 1 for i, w in enumerate(self.fundamental_weights) if self.inner(w, cv) != 0
        )

    def highest_root(self) -> Root:
        return max(self.positive, key=self.height)


@lru_cache(maxsize=None)
def _build(family: str, rank: int) -> RootSystem:
    return RootSystem(RootSystemId(family, rank))


def build_root_system(rid: RootSystemId | str, rank: int | None = None) -> RootSystem:
    """Build (and cache) a root system: ``build_root_system("B", 3)`` or
    ``build_root_system(RootSystemId("B", 3))``."""
    if isinstance(rid, RootSystemId):
        return _build(rid.family, rid.rank)
    RootSystemId(rid, rank)  # validates
    return _build(rid, rank)


def expected_positive_count(family: str, n: int) -> int:
    return {"A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1)}[family]


def try_add(rs: RootSystem, b1: RootLike, b2: RootLike) -> Root | None:
    """b1 + b2 if it is a positive root, else None. Inputs must be positive roots."""
    r1, r2 = rs.root(b1), rs.root(b2)
    s = tuple(a + b for a, b in zip(r1.coords, r2.coords))
    return rs._by_coords.get(s)


def alpha_chain(rs: RootSystem, alpha: RootLike, beta: RootLike) -> tuple[int, int]:
    """(q, r): beta + k*alpha is a root for k = -r..q, maximal."""
    a, b = rs.coords(alpha), rs.coords(beta)
    if not rs.is_root(a) or not rs.is_root(b):
        raise DomainError("alpha_chain needs roots")
    if a == b or a == tuple(-x for x in b):
        raise DomainError("alpha_chain needs alpha != +-beta")

    def run(sign):
        k = 0
        while tuple(y + sign * (k + 1) * x for x, y in zip(a, b)) in rs.all_coords:
            k += 1
        return k

    return run(1), run(-1)


def root_data(rs: RootSystem, beta: RootLike) -> dict:
    r = rs.root(beta)
    return {
        "height": rs.height(r),
        "support": rs.support(r),
        "length2": rs.inner(r.coords, r.coords),
        "coroot": rs.coroot(r),
    }


def iter_systems(families: Iterable[str], max_rank: int, d_max_rank: int | None = None):
    """All valid root systems with rank up to max_rank (type D up to d_max_rank)."""
    for fam in families:
        top = d_max_rank if (fam == "D" and d_max_rank is not None) else max_rank
        for n in range(MIN_RANK[fam], top + 1):
            yield build_root_system(fam, n)
