"""Acceptance criteria, checked exactly.

Each criterion prints one line ``[PASS|FAIL] <n> <title> (<cases>, <seconds>)``
and fails the test if any case disagrees or the time budget is exceeded.
Run directly with ``python tests/test_acceptance.py`` or through pytest
(``pytest tests/test_acceptance.py -s``).
"""

from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass, field
from typing import Callable

import pytest

from degen.chevalley import bracket_table, graded_algebra, jacobi_check, verify_laiso
from degen.cones import (
    abelianisation_cone,
    all_cut_sets,
    constant_point,
    dynkin_cone,
    facet_witness,
    height_point,
    random_cone_point,
    relint_point,
    summable_pairs,
    violated,
)
from degen.demazure import (
    CharacterMemo,
    classical_fundamental_dims,
    fundamental,
    stretched_dim,
    weight_grid,
    weyl_dim,
)
from degen.errors import InvariantViolation
from degen.gradedmod import build_wedge_module, demazure_span, filtration_dims, wedge_range
from degen.polytopes import lattice_point_count
from degen.rootsys import iter_systems
from degen.stretch import closure_and_convexity_check, psi_property_report, stretch_map
from degen.weyl import extremal_columns, verify_prop_weylgroup, wc_element, wc_type_a_violations


@dataclass
class Outcome:
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    def check(self, ok: bool, what: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(what)


def crit1() -> Outcome:
    out = Outcome()
    for rs in iter_systems("ABCD", 5):
        cone = abelianisation_cone(rs)
        for a, b, g in summable_pairs(rs):
            bad = violated(cone, facet_witness(rs, a, b, g))
            own = {(rs.index[a.coords], 1), (rs.index[b.coords], 1), (rs.index[g.coords], -1)}
            ok = len(bad) == 1 and {(k, int(v)) for k, v in bad[0].coeffs} == own
            out.check(ok, f"{rs.id} {a.label}+{b.label}")
    return out


def crit2() -> Outcome:
    out = Outcome()
    for rs in iter_systems("ABCD", 5):
        out.check(jacobi_check(graded_algebra(rs, height_point(rs))), f"{rs.id} height point")
        out.check(bracket_table(graded_algebra(rs, constant_point(rs, 2))) == {}, f"{rs.id} constant 2")
        for c in all_cut_sets(rs):
            d = relint_point(dynkin_cone(rs, c))
            out.check(jacobi_check(graded_algebra(rs, d)), f"{rs.id} c={c}")
    return out


def crit3() -> Outcome:
    out = Outcome()
    for rs in iter_systems("ABCD", 5):
        for c in all_cut_sets(rs):
            m = stretch_map(rs, c)
            rep = psi_property_report(m, rs, 3)
            out.check(rep.ok, f"{rs.id} c={c}: {rep.failures[:2]}")
            rep = closure_and_convexity_check(m, rs)
            out.check(rep.ok, f"{rs.id} c={c} closure: {rep.failures[:2]}")
    return out


def crit4() -> Outcome:
    out = Outcome()
    for rs in iter_systems("ABCD", 5, d_max_rank=6):
        n = rs.rank
        want = {"A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1)}[rs.family]
        for c in all_cut_sets(rs):
            rep = verify_prop_weylgroup(rs, c)
            out.check(rep.ok, f"{rs.id} c={c}: {rep.failures[:2]}")
            out.check(len(wc_element(rs, c)[1]) == want, f"{rs.id} c={c} length")
    for rs in iter_systems("A", 6):
        for c in all_cut_sets(rs):
            out.check(wc_type_a_violations(rs, c) == [], f"{rs.id} c={c} closed form")
    return out


def crit5() -> Outcome:
    out = Outcome()
    for rs in iter_systems("ABCD", 5):
        for c in all_cut_sets(rs):
            rep = verify_laiso(rs, c, relint_point(dynkin_cone(rs, c)))
            out.check(rep.ok, f"{rs.id} c={c}")
    return out


def crit6() -> Outcome:
    out = Outcome()
    for rs in iter_systems("ABCD", 5, d_max_rank=6):
        closed = classical_fundamental_dims(rs.family, rs.rank)
        memo = CharacterMemo()
        for k in range(1, rs.rank + 1):
            lam = fundamental(rs, k)
            w = weyl_dim(rs, lam)
            out.check(w == closed[k], f"{rs.id} k={k} closed form")
            for c in all_cut_sets(rs):
                out.check(stretched_dim(rs, c, lam, memo) == w, f"{rs.id} k={k} c={c}")
    return out


def crit7() -> Outcome:
    out = Outcome()
    for rs in iter_systems("ABCD", 4):
        memo = CharacterMemo()
        for lam in weight_grid(rs.rank, 2):
            w = weyl_dim(rs, lam)
            for c in all_cut_sets(rs):
                out.check(stretched_dim(rs, c, lam, memo) == w, f"{rs.id} lam={lam} c={c}")
    return out


def crit8() -> Outcome:
    out = Outcome()
    for rs in iter_systems("AC", 4):
        for lam in weight_grid(rs.rank, 2):
            out.check(lattice_point_count(rs, lam) == weyl_dim(rs, lam), f"{rs.id} lam={lam}")
    return out


def crit9() -> Outcome:
    out = Outcome()
    for rs in iter_systems("ABD", 5):
        top = {"A": rs.rank, "B": rs.rank - 1, "D": rs.rank - 2}[rs.family]
        for c in all_cut_sets(rs):
            for i in range(1, top + 1):
                # raises if the direct action and the closed form disagree
                try:
                    ok, why = bool(extremal_columns(rs, c, i)), ""
                except InvariantViolation as exc:
                    ok, why = False, str(exc)
                out.check(ok, f"{rs.id} c={c} i={i} {why}")
    return out


def crit10() -> Outcome:
    out = Outcome()
    for rs in iter_systems("ABD", 4):
        rng = random.Random(f"acceptance:{rs.id}")
        cuts = list(all_cut_sets(rs))
        points = [height_point(rs)] + [relint_point(dynkin_cone(rs, c)) for c in cuts]
        points += [random_cone_point(abelianisation_cone(rs), rng) for _ in range(3)]
        for k in wedge_range(rs.family, rs.rank):
            m = build_wedge_module(rs, k)
            lam = fundamental(rs, k)
            w = weyl_dim(rs, lam)
            for d in points:
                out.check(sum(filtration_dims(m, d).values()) == m.dim == w, f"{rs.id} k={k} filtration")
            for c in cuts:
                span = demazure_span(rs, c, k)
                ok = span.dim == w == stretched_dim(rs, c, lam) and span.prefix_ok
                out.check(ok, f"{rs.id} k={k} c={c} span {span.dim} vs {w}")
    return out


CRITERIA: list[tuple[int, str, Callable[[], Outcome], float]] = [
    (1, "facet non-redundancy", crit1, 10),
    (2, "graded Jacobi and abelian point", crit2, 30),
    (3, "stretch properties", crit3, 60),
    (4, "inversion sets and lengths of w_c", crit4, 30),
    (5, "bracket pattern and sign rescaling", crit5, 60),
    (6, "fundamental dimensions", crit6, 300),
    (7, "general-weight dimensions", crit7, 600),
    (8, "lattice-point counts", crit8, 300),
    (9, "extremal vectors", crit9, 10),
    (10, "wedge-module cross-check", crit10, 300),
]


def run_criterion(num: int, title: str, fn: Callable[[], Outcome], budget: float) -> tuple[bool, str]:
    t0 = time.perf_counter()
    out = fn()
    dt = time.perf_counter() - t0
    ok = not out.failures and out.cases > 0 and dt < budget
    mark = "PASS" if ok else "FAIL"
    line = f"[{mark}] {num:2d} {title} ({out.cases} cases, {len(out.failures)} wrong, {dt:.1f}s of {budget:.0f}s)"
    if out.failures:
        line += "\n       first failures: " + "; ".join(out.failures[:3])
    return ok, line


@pytest.mark.slow
@pytest.mark.parametrize("num,title,fn,budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, budget, capsys):
    ok, line = run_criterion(num, title, fn, budget)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
