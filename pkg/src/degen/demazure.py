"""Demazure operators, Demazure characters and Weyl dimensions.

Characters live on an integral lattice: epsilon coordinates are doubled for
types B and D so that spin weights stay integral. Two engines are provided.
``demazure_step`` works on a plain dict and serves as the reference. The array
engine used by ``demazure_character`` stores a character as an integer weight
matrix with a multiplicity column and merges repeated weights by sorting.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, prod
from typing import Iterable, Mapping, Sequence

import numpy as np

from degen.cones import validate_cuts
from degen.errors import DomainError, InvariantViolation, PreconditionError
from degen.rootsys import RootSystem
from degen.stretch import psi_weight, stretch_map, weight
from degen.weyl import build_wc, word_to_element


def lattice_scale(family: str) -> int:
    return 2 if family in ("B", "D") else 1


@dataclass(frozen=True)
class LaurentChar:
    """weight (scaled epsilon coordinates) -> positive multiplicity."""

    family: str
    rank: int
    terms: Mapping[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        bad = [w for w, m in self.terms.items() if m < 1]
        if bad:
            raise InvariantViolation(f"non-positive multiplicity at {bad[0]}")

    @property
    def dim(self) -> int:
        return sum(self.terms.values())

    @property
    def scale(self) -> int:
        return lattice_scale(self.family)

    def weights(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.terms)

    def epsilon_terms(self) -> dict[tuple[Fraction, ...], int]:
        """The same character with unscaled (possibly half-integral) coordinates."""
        s = self.scale
        return {tuple(Fraction(x, s) for x in w): m for w, m in self.terms.items()}

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "scale": self.scale,
            "dim": self.dim,
            "terms": [[list(w), m] for w, m in sorted(self.terms.items())],
        }


def scaled_weight(rs: RootSystem, lam: Sequence[int]) -> tuple[int, ...]:
    s = lattice_scale(rs.family)
    eps = rs.weight_to_epsilon(lam)
    out = tuple(x * s for x in eps)
    if any(x.denominator != 1 for x in out):
        raise InvariantViolation(f"weight {tuple(lam)} is not integral on the scaled lattice")
    return tuple(int(x) for x in out)


def _simple_data(rs: RootSystem, i: int) -> tuple[tuple[int, ...], tuple[Fraction, ...]]:
    """(alpha_i on the scaled lattice, functional mu -> <mu, alpha_i^vee> on it)."""
    if not 1 <= i <= rs.rank:
        raise DomainError(f"simple index {i} outside 1..{rs.rank}")
    s = lattice_scale(rs.family)
    a = rs.simple[i - 1].coords
    # <mu/s, a^vee> = 2 (mu.a) / (s a.a); the form's overall scale cancels
    aa = sum(x * x for x in a)
    return tuple(s * x for x in a), tuple(Fraction(2 * x, s * aa) for x in a)


def _pair(mu: Sequence[int], functional: Sequence[Fraction]) -> int:
    v = sum(f * x for f, x in zip(functional, mu))
    if v.denominator != 1:
        raise InvariantViolation(f"non-integral coroot pairing for {tuple(mu)}")
    return int(v)


def demazure_step(rs: RootSystem, i: int, chi: LaurentChar | Mapping) -> LaurentChar:
    """Apply D_i termwise. Accepts a LaurentChar or a raw {weight: mult} map; a raw
    map may carry negative multiplicities, in which case the result is returned
    as a raw dict as well."""
    alpha, func = _simple_data(rs, i)
    terms = chi.terms if isinstance(chi, LaurentChar) else chi
    out: dict[tuple[int, ...], int] = {}
    for mu, mult in terms.items():
        m = _pair(mu, func)
        if m >= 0:
            ks, sign = range(0, -m - 1, -1), 1
        elif m == -1:
            continue
        else:
            ks, sign = range(1, -m), -1
        for k in ks:
            nu = tuple(x + k * a for x, a in zip(mu, alpha))
            out[nu] = out.get(nu, 0) + sign * mult
    out = {w: m for w, m in out.items() if m}
    if isinstance(chi, LaurentChar):
        return LaurentChar(rs.family, rs.rank, out)
    return out


# -- array engine ---------------------------------------------------------------------


@dataclass
class _Arrays:
    weights: np.ndarray  # (T, dim) int64
    mults: np.ndarray  # (T,) int64


def _merge(weights: np.ndarray, mults: np.ndarray) -> _Arrays:
    if len(mults) == 0:
        return _Arrays(weights, mults)
    lo = weights.min(axis=0)
    span = weights.max(axis=0) - lo + 1
    if float(np.prod(span.astype(float))) >= 2.0**62:
        raise InvariantViolation("weight box too large to key")
    radix = np.ones(weights.shape[1], dtype=np.int64)
    for p in range(weights.shape[1] - 2, -1, -1):
        radix[p] = radix[p + 1] * span[p + 1]
    keys = (weights - lo) @ radix
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    first = np.flatnonzero(np.concatenate(([True], keys[1:] != keys[:-1])))
    total = np.add.reduceat(mults[order], first)
    keep = total != 0
    first = order[first]
    return _Arrays(weights[first[keep]], total[keep])


def _step_arrays(ch: _Arrays, alpha: np.ndarray, coroot_num: np.ndarray, den: int) -> _Arrays:
    w, mult = ch.weights, ch.mults
    num = w @ coroot_num
    if np.any(num % den):
        raise InvariantViolation("non-integral coroot pairing")
    m = num // den
    count = np.where(m >= 0, m + 1, np.where(m <= -2, -m - 1, 0))
    total = int(count.sum())
    if total == 0:
        return _Arrays(np.zeros((0, w.shape[1]), dtype=np.int64), np.zeros(0, dtype=np.int64))
    src = np.repeat(np.arange(len(m)), count)
    starts = np.cumsum(count) - count
    j = np.arange(total) - np.repeat(starts, count)
    neg = m[src] < 0
    shift = np.where(neg, j + 1, -j)
    new_w = w[src] + shift[:, None] * alpha[None, :]
    new_m = np.where(neg, -mult[src], mult[src])
    return _merge(new_w, new_m)


class CharacterMemo:
    """Per-run memo of D_{i_k}...D_{i_r} e^lam keyed by (system, word suffix, lam).

    Only characters up to ``max_terms`` weights are stored. Each run owns its memo,
    so concurrent runs never share one."""

    def __init__(self, max_terms: int = 50_000):
        self.max_terms = max_terms
        self._store: dict[tuple, _Arrays] = {}
        self.hits = 0

    def get(self, key):
        hit = self._store.get(key)
        if hit is not None:
            self.hits += 1
        return hit

    def put(self, key, value: _Arrays) -> None:
        if len(value.mults) <= self.max_terms:
            self._store[key] = value


def _check_reduced(rs: RootSystem, word: Sequence[int]) -> None:
    for i in word:
        if not 1 <= i <= rs.rank:
            raise PreconditionError(f"letter {i} outside 1..{rs.rank}")
    _, reduced = word_to_element(rs, word)
    if not reduced:
        raise PreconditionError(f"word {list(word)} is not reduced")


def _run_word(rs: RootSystem, word: Sequence[int], top: tuple[int, ...], memo: CharacterMemo | None) -> _Arrays:
    ch = _Arrays(np.array([top], dtype=np.int64), np.array([1], dtype=np.int64))
    data = {}
    for i in set(word):
        alpha, func = _simple_data(rs, i)
        den = lcm(*(f.denominator for f in func))
        data[i] = (
            np.array(alpha, dtype=np.int64),
            np.array([int(f * den) for f in func], dtype=np.int64),
            den,
        )
    start = len(word)
    if memo is not None:
        for k in range(0, len(word) + 1):
            hit = memo.get((rs.id, tuple(word[k:]), top))
            if hit is not None:
                ch, start = hit, k
                break
    for k in range(start - 1, -1, -1):
        ch = _step_arrays(ch, *data[word[k]])
        if memo is not None:
            memo.put((rs.id, tuple(word[k:]), top), ch)
    return ch


def demazure_character(
    rs: RootSystem, word: Sequence[int], lam: Sequence[int], memo: CharacterMemo | None = None
) -> LaurentChar:
    """D_{i_1} ... D_{i_r} e^lam for a reduced word; lam in fundamental-weight coordinates."""
    lam = weight(lam)
    _check_reduced(rs, word)
    ch = _run_word(rs, tuple(word), scaled_weight(rs, lam), memo)
    if np.any(ch.mults < 1):
        raise InvariantViolation("Demazure character with non-positive multiplicity")
    terms = {tuple(int(x) for x in w): int(m) for w, m in zip(ch.weights, ch.mults)}
    return LaurentChar(rs.family, rs.rank, terms)


def demazure_dim(
    rs: RootSystem, word: Sequence[int], lam: Sequence[int], memo: CharacterMemo | None = None
) -> int:
    lam = weight(lam)
    _check_reduced(rs, word)
    ch = _run_word(rs, tuple(word), scaled_weight(rs, lam), memo)
    return int(ch.mults.sum())


def demazure_character_reference(rs: RootSystem, word: Sequence[int], lam: Sequence[int]) -> LaurentChar:
    """Same as demazure_character, through the dict engine."""
    lam = weight(lam)
    _check_reduced(rs, word)
    chi = LaurentChar(rs.family, rs.rank, {scaled_weight(rs, lam): 1})
    for i in reversed(word):
        chi = demazure_step(rs, i, chi)
    return chi


# -- Weyl dimension -------------------------------------------------------------------


def weyl_dim(rs: RootSystem, lam: Sequence[int]) -> int:
    lam = weight(lam)
    if len(lam) != rs.rank:
        raise DomainError(f"weight needs {rs.rank} coordinates")
    rho = [1] * rs.rank
    shifted = [a + 1 for a in lam]
    top = prod(rs.weight_pairing(shifted, b) for b in rs.positive)
    bottom = prod(rs.weight_pairing(rho, b) for b in rs.positive)
    v = Fraction(top) / bottom
    if v.denominator != 1 or v < 1:
        raise InvariantViolation(f"Weyl dimension {v} is not a positive integer")
    return int(v)


def fundamental(rs: RootSystem, k: int) -> tuple[int, ...]:
    if not 1 <= k <= rs.rank:
        raise DomainError(f"fundamental index {k} outside 1..{rs.rank}")
    return tuple(1 if p == k else 0 for p in range(1, rs.rank + 1))


def stretched_dim(rs: RootSystem, cuts: Iterable[int], lam: Sequence[int], memo: CharacterMemo | None = None) -> int:
    """dim of the Demazure module for w_c in the stretched system at Psi(lam)."""
    c = validate_cuts(rs, cuts)
    m = stretch_map(rs, c)
    big = m.target
    return demazure_dim(big, build_wc(rs, c), psi_weight(m, lam), memo)


def stretched_character(rs: RootSystem, cuts: Iterable[int], lam: Sequence[int]) -> LaurentChar:
    c = validate_cuts(rs, cuts)
    m = stretch_map(rs, c)
    return demazure_character(m.target, build_wc(rs, c), psi_weight(m, lam))


def classical_fundamental_dims(family: str, n: int) -> dict[int, int]:
    """Closed forms for the fundamental dimensions: binomials and spin powers."""
    from math import comb

    if family == "A":
        return {k: comb(n + 1, k) for k in range(1, n + 1)}
    if family == "B":
        out = {k: comb(2 * n + 1, k) for k in range(1, n)}
        out[n] = 2**n
        return out
    if family == "D":
        out = {k: comb(2 * n, k) for k in range(1, n - 1)}
        out[n - 1] = out[n] = 2 ** (n - 1)
        return out
    if family == "C":
        # Lambda^k C^{2n} minus Lambda^{k-2} C^{2n}
        return {k: comb(2 * n, k) - (comb(2 * n, k - 2) if k >= 2 else 0) for k in range(1, n + 1)}
    raise DomainError(f"unknown family {family}")


def weight_grid(rank: int, bound: int) -> list[tuple[int, ...]]:
    from itertools import product

    return [tuple(w) for w in product(range(bound + 1), repeat=rank)]


@dataclass
class DimCase:
    lam: tuple[int, ...]
    expected: int
    computed: int
    runtime_ms: float

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


@dataclass
class DimReport:
    family: str
    rank: int
    cuts: tuple[int, ...]
    cases: list[DimCase] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cases)

    @property
    def failures(self) -> list[DimCase]:
        return [c for c in self.cases if not c.ok]


def verify_dim_equalities(
    rs: RootSystem, cuts: Iterable[int], grid: Iterable[Sequence[int]], memo: CharacterMemo | None = None
) -> DimReport:
    c = validate_cuts(rs, cuts)
    rep = DimReport(rs.family, rs.rank, tuple(c))
    memo = memo if memo is not None else CharacterMemo()
    for lam in grid:
        lam = weight(lam)
        t0 = time.perf_counter()
        got = stretched_dim(rs, c, lam, memo)
        rep.cases.append(DimCase(tuple(lam), weyl_dim(rs, lam), got, (time.perf_counter() - t0) * 1e3))
    return rep
