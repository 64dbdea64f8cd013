"""Exact two-phase simplex over the rationals (Bland's rule, so it terminates).

    maximize  c.x  subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _pivot(rows: list[list[Fraction]], r: int, c: int) -> None:
    prow = rows[r]
    inv = 1 / prow[c]
    if inv != 1:
        prow[:] = [v * inv for v in prow]
    nz = [k for k, v in enumerate(prow) if v]
    for i, row in enumerate(rows):
        if i != r:
            f = row[c]
            if f:
                for k in nz:
                    row[k] -= f * prow[k]


def _run(rows, obj, basis, allowed) -> bool:
    """Simplex iterations on a tableau whose last row is the objective row
    (holding -reduced costs). Returns False if unbounded."""
    m = len(basis)
    width = len(obj) - 1
    while True:
        enter = next((j for j in range(width) if allowed[j] and obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rows[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot_all(rows, obj, best[1], enter)
        basis[best[1]] = enter


def _pivot_all(rows, obj, r, c):
    rows.append(obj)
    try:
        _pivot(rows, r, c)
    finally:
        rows.pop()


def maximize(
    c: Sequence,
    a_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    a_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    n = len(c)
    specs = []  # (coeffs, rhs, slack sign or 0)
    for a, b in zip(a_ub, b_ub):
        specs.append(([Fraction(x) for x in a], Fraction(b), 1))
    for a, b in zip(a_eq, b_eq):
        specs.append(([Fraction(x) for x in a], Fraction(b), 0))
    m = len(specs)
    n_slack = sum(1 for s in specs if s[2])
    # a row needs an artificial unless it is a <= row with nonnegative rhs
    needs_art = [not (s[2] and s[1] >= 0) for s in specs]
    n_art = sum(needs_art)
    width = n + n_slack + n_art
    rows, basis = [], []
    si, ai = n, n + n_slack
    for (a, b, slack), art in zip(specs, needs_art):
        row = a + [Fraction(0)] * (n_slack + n_art) + [b]
        sign = 1
        if b < 0:
            sign = -1
            row = [-v for v in row]
        if slack:
            row[si] = Fraction(sign)
            if not art:
                basis.append(si)
            si += 1
        if art:
            row[ai] = Fraction(1)
            basis.append(ai)
            ai += 1
        rows.append(row)

    is_art = [j >= n + n_slack for j in range(width)]
    if n_art:
        # phase 1: maximize -sum(artificials); objective row stores -reduced costs
        obj = [Fraction(0)] * (width + 1)
        for i, b in enumerate(basis):
            if is_art[b]:
                obj = [o - v for o, v in zip(obj, rows[i])]
        for j in range(width):
            if is_art[j]:
                obj[j] = Fraction(0)
        _run(rows, obj, basis, [True] * width)
        if obj[-1] != 0:
            return LPResult(INFEASIBLE)
        # drive remaining artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(rows):
            if is_art[basis[i]]:
                col = next((j for j in range(width) if not is_art[j] and rows[i][j]), None)
                if col is None:
                    del rows[i], basis[i]
                    continue
                _pivot_all(rows, obj, i, col)
                basis[i] = col
            i += 1

    cc = [Fraction(x) for x in c] + [Fraction(0)] * (width - n)
    obj = [-v for v in cc] + [Fraction(0)]
    for i, b in enumerate(basis):
        if cc[b]:
            f = cc[b]
            obj = [o + f * v for o, v in zip(obj, rows[i])]
    if not _run(rows, obj, basis, [not a for a in is_art]):
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * width
    for i, b in enumerate(basis):
        x[b] = rows[i][-1]
    return LPResult(OPTIMAL, obj[-1], tuple(x[:n]))
