"""Weyl groups of classical type as (signed) permutations of epsilon indices.

``images[k-1] = w(k)``; a negative image means ``w(e_k) = -e_{|w(k)|}``. A word
``[i_1, ..., i_r]`` denotes ``s_{i_1} ... s_{i_r}``, acting right to left.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NewType, Sequence

from degen.cones import validate_cuts
from degen.errors import DomainError, InvariantViolation
from degen.rootsys import Root, RootSystem, build_root_system
from degen.stretch import Report, image_set, stretch_map

Word = NewType("Word", tuple)


@dataclass(frozen=True)
class WeylElement:
    family: str
    rank: int
    images: tuple[int, ...]

    @property
    def rs(self) -> RootSystem:
        return build_root_system(self.family, self.rank)

    def __call__(self, k: int) -> int:
        """Image of a signed index."""
        if k == 0:
            return 0
        v = self.images[abs(k) - 1]
        return v if k > 0 else -v

    def act(self, coords: Sequence) -> tuple:
        out = [0] * len(self.images)
        for k, x in enumerate(coords, start=1):
            if x:
                v = self.images[k - 1]
                out[abs(v) - 1] += x if v > 0 else -x
        return tuple(out)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        """(self * other)(k) = self(other(k))."""
        return WeylElement(self.family, self.rank, tuple(self(other(k)) for k in range(1, len(self.images) + 1)))

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.images)
        for k, v in enumerate(self.images, start=1):
            inv[abs(v) - 1] = k if v > 0 else -k
        return WeylElement(self.family, self.rank, tuple(inv))

    def one_line(self) -> tuple[int, ...]:
        return self.images

    def length(self) -> int:
        return len(inversion_set(self))


def _size(family: str, rank: int) -> int:
    return rank + 1 if family == "A" else rank


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement(rs.family, rs.rank, tuple(range(1, _size(rs.family, rs.rank) + 1)))


@lru_cache(maxsize=None)
def _simple(family: str, rank: int, i: int) -> WeylElement:
    size = _size(family, rank)
    if not 1 <= i <= rank:
        raise DomainError(f"simple reflection index {i} out of range 1..{rank}")
    img = list(range(1, size + 1))
    if family == "A" or i < rank:
        img[i - 1], img[i] = i + 1, i
    elif family in ("B", "C"):
        img[i - 1] = -i
    else:
        img[rank - 2], img[rank - 1] = -rank, -(rank - 1)
    return WeylElement(family, rank, tuple(img))


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    return _simple(rs.family, rs.rank, i)


def element_of(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    w = identity(rs)
    for i in word:
        w = w * simple_reflection(rs, i)
    return w


def _is_negative(rs: RootSystem, coords: tuple) -> bool:
    return rs.is_positive_root(tuple(-x for x in coords))


def inversion_set_direct(w: WeylElement) -> frozenset[Root]:
    rs = w.rs
    return frozenset(b for b in rs.positive if _is_negative(rs, w.act(b.coords)))


def inversion_set_from_word(rs: RootSystem, word: Sequence[int]) -> list[Root]:
    """[a_{i_r}, s_{i_r}(a_{i_{r-1}}), ..., s_{i_r}...s_{i_2}(a_{i_1})] for a reduced word."""
    out = []
    cur = identity(rs)
    for i in reversed(word):
        img = cur.act(rs.simple[i - 1].coords)
        if not rs.is_positive_root(img):
            raise DomainError(f"word {list(word)} is not reduced")
        out.append(rs.root(img))
        cur = cur * simple_reflection(rs, i)
    return out


def inversion_set(w: WeylElement, word: Sequence[int] | None = None) -> frozenset[Root]:
    """Roots sent negative by w; cross-checked against the word telescoping when a
    reduced word is supplied."""
    direct = inversion_set_direct(w)
    if word is not None and len(word) == len(direct):
        tele = inversion_set_from_word(w.rs, word)
        if frozenset(tele) != direct or len(tele) != len(set(tele)):
            raise InvariantViolation(f"inversion set of {list(word)} disagrees between methods")
    return direct


def word_to_element(rs: RootSystem, word: Sequence[int]) -> tuple[WeylElement, bool]:
    w = element_of(rs, word)
    inv = inversion_set(w, word)
    return w, len(word) == len(inv)


def reduced_word(w: WeylElement) -> Word:
    """A reduced word for w, peeling right descents (w(alpha_i) < 0)."""
    rs = w.rs
    letters: list[int] = []
    cur = w
    while True:
        i = next(
            (k for k, a in enumerate(rs.simple, start=1) if _is_negative(rs, cur.act(a.coords))),
            None,
        )
        if i is None:
            break
        letters.append(i)
        cur = cur * simple_reflection(rs, i)
    return Word(tuple(reversed(letters)))


def longest_levi_element(rs: RootSystem, first: int) -> WeylElement:
    """Longest element of the parabolic subgroup generated by s_first..s_rank,
    written down as a signed permutation rather than a word."""
    size = _size(rs.family, rs.rank)
    img = list(range(1, size + 1))
    block = list(range(first, size + 1))
    if rs.family == "A":
        for a, b in zip(block, reversed(block)):
            img[a - 1] = b
    else:
        for a in block:
            img[a - 1] = -a
        if rs.family == "D" and len(block) % 2 == 1:
            img[size - 1] = size
    return WeylElement(rs.family, rs.rank, tuple(img))


# -- the element w_c ----------------------------------------------------------------


def _run(a: int, b: int) -> list[int]:
    return list(range(a, b + 1))


def reddec_word(cuts: Sequence[int], top: int) -> list[int]:
    """v_{t+1} v_t ... v_1 with v_k = (s_k..s_{c_k+k-1}) ... (s_k..s_{c_{k-1}+k}),
    c_0 = 0 and c_{t+1} = top."""
    t = len(cuts)
    c = [0] + list(cuts) + [top]
    word: list[int] = []
    for k in range(t + 1, 0, -1):
        for m in range(c[k] + k - 1, c[k - 1] + k - 1, -1):
            word += _run(k, m)
    return word


def levi_prefix_word(family: str, n: int, t: int) -> list[int]:
    """The factor of w_{0,t} standing in front of the type A_{n-1} part."""
    N = n + t
    word: list[int] = []
    if family in ("B", "C"):
        for a in range(N, t, -1):
            word += _run(a, N)
    elif family == "D":
        for a in range(N - 1, t, -1):
            word += _run(a, N - 2) + [N if (a - t) % 2 == 1 else N - 1]
    return word


def build_wc(rs: RootSystem, cuts: Iterable[int]) -> Word:
    c = validate_cuts(rs, cuts)
    n, t = rs.rank, len(c)
    if rs.family == "A":
        return Word(tuple(reddec_word(c, n)))
    return Word(tuple(levi_prefix_word(rs.family, n, t) + reddec_word(c, n - 1)))


def wc_by_definition(rs: RootSystem, cuts: Iterable[int]) -> WeylElement:
    """w_{0,t} (s_{t+1}..s_{c_t+t} s_t..s_{c_t+t-1}) ... (s_2..s_{c_1+1} s_1..s_{c_1})."""
    c = validate_cuts(rs, cuts)
    t = len(c)
    big = build_root_system(rs.family, rs.rank + t)
    tail: list[int] = []
    for k in range(t, 0, -1):
        tail += _run(k + 1, c[k - 1] + k) + _run(k, c[k - 1] + k - 1)
    return longest_levi_element(big, t + 1) * element_of(big, tail)


def wc_element(rs: RootSystem, cuts: Iterable[int]) -> tuple[RootSystem, Word, WeylElement]:
    c = validate_cuts(rs, cuts)
    big = build_root_system(rs.family, rs.rank + len(c))
    word = build_wc(rs, c)
    return big, word, element_of(big, word)


# -- extremal columns ---------------------------------------------------------------


def extremal_columns(rs: RootSystem, cuts: Iterable[int], i: int) -> tuple[int, ...]:
    """w_c({1, ..., sigma(i)}) as signed indices, checked against the closed form."""
    fam, n = rs.family, rs.rank
    top = {"A": n, "B": n - 1, "D": n - 2}.get(fam)
    if top is None:
        raise DomainError(f"extremal columns are not defined for type {fam}")
    if not 1 <= i <= top:
        raise DomainError(f"index {i} outside 1..{top} for type {fam}")
    c = validate_cuts(rs, cuts)
    m = stretch_map(rs, c)
    _, _, w = wc_element(rs, c)
    li = m(i)
    direct = tuple(sorted(w(k) for k in range(1, li + 1)))
    closed = extremal_columns_closed_form(fam, n, len(c), i, li)
    if set(direct) != set(closed):
        raise InvariantViolation(f"extremal columns {direct} != closed form {closed}")
    return direct


def extremal_columns_closed_form(family: str, n: int, t: int, i: int, li: int) -> tuple[int, ...]:
    head = list(range(1, li - i + 1))
    if family == "A":
        return tuple(head + list(range(n + 2 + li - 2 * i, n + 2 + li - i)))
    return tuple(head + [-m for m in range(2 * t + i + 1 - li, 2 * t + 2 * i - li + 1)])


# -- verification -------------------------------------------------------------------


def verify_prop_weylgroup(rs: RootSystem, cuts: Iterable[int]) -> Report:
    """Inversion set of w_c equals the image of psi, and the word is reduced of
    length |positive roots|."""
    c = validate_cuts(rs, cuts)
    rep = Report(True)
    big, word, w = wc_element(rs, c)
    inv = inversion_set(w, word)
    img = image_set(stretch_map(rs, c), rs)
    rep.checked += 3
    if len(word) != len(rs.positive):
        rep.fail(f"word length {len(word)} != {len(rs.positive)}")
    if len(inv) != len(word):
        rep.fail(f"word {list(word)} is not reduced")
    if inv != img:
        rep.fail(f"inversion set differs from the psi image by {sorted(map(str, inv ^ img))}")
    if w != wc_by_definition(rs, c):
        rep.fail("word disagrees with the defining product")
    return rep


def wc_type_a_violations(rs: RootSystem, cuts: Iterable[int]) -> list[str]:
    """Compare the composed permutation with the explicit values at l_j and l_j - 1."""
    if rs.family != "A":
        raise DomainError("the closed-form permutation is stated for type A")
    c = validate_cuts(rs, cuts)
    m = stretch_map(rs, c)
    _, _, w = wc_element(rs, c)
    n, out = rs.rank, []
    for j in range(1, n + 1):
        lj, prev = m(j), m(j - 1)
        if lj == prev + 1:
            expect = {lj: lj + n - 2 * j + 2}
        elif lj == prev + 2:
            expect = {lj - 1: lj - j, lj: lj + n - j + 1}
        else:
            raise InvariantViolation(f"sigma jumps by {lj - prev} at {j}")
        for k, v in expect.items():
            if w(k) != v:
                out.append(f"w({k}) = {w(k)}, expected {v}")
    return out


def prefix_reverses_block(family: str, n: int, t: int) -> bool:
    """The B/C prefix word sends e_{t+1}, ..., e_{n+t} to -e_{n+t}, ..., -e_{t+1}."""
    if family not in ("B", "C"):
        raise DomainError("the prefix property is stated for types B and C")
    big = build_root_system(family, n + t)
    w = element_of(big, levi_prefix_word(family, n, t))
    N = n + t
    return all(w(k) == -(N + t + 1 - k) for k in range(t + 1, N + 1)) and all(
        w(k) == k for k in range(1, t + 1)
    )
