"""Named verification suites over (family, rank, cut set).

Each suite yields ``Case`` records. Cases are grouped into units, one per
(suite, family, rank). A unit is independent of the others, so units can run in
worker processes. The report is sorted by case key afterwards, so it never
depends on completion order.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

from degen import __version__
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
from degen.errors import DegenError
from degen.gradedmod import (
    build_wedge_module,
    demazure_span,
    filtration_dims,
    module_violations,
    wedge_range,
)
from degen.polytopes import is_triangular, lattice_point_count, wc_embedding_matches
from degen.report import Case, Report, config_dict
from degen.rootsys import FAMILIES, MIN_RANK, RootSystem, build_root_system
from degen.stretch import closure_and_convexity_check, psi_property_report, stretch_map
from degen.weyl import (
    extremal_columns,
    prefix_reverses_block,
    verify_prop_weylgroup,
    wc_element,
    wc_type_a_violations,
)

SUITES = ("facets", "jacobi", "stretch", "weylgroup", "laiso", "dims", "polytopes", "wedge")
SUITE_FAMILIES = {"polytopes": ("A", "C"), "wedge": ("A", "B", "D")}


@dataclass(frozen=True)
class VerifyConfig:
    families: tuple[str, ...] = FAMILIES
    max_rank: int = 3
    lambda_bound: int = 0
    suites: tuple[str, ...] = SUITES
    d_max_rank: int | None = None
    seed: int = 0
    jobs: int = 1
    timing: bool = True
    output: str | None = None
    fmt: str = "json"

    def __post_init__(self):
        if not self.families:
            raise DegenError("no families selected")
        bad = [f for f in self.families if f not in FAMILIES]
        if bad:
            raise DegenError(f"unknown families {bad}")
        if not self.suites:
            raise DegenError("no suites selected")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise DegenError(f"unknown suites {unknown}; choose from {', '.join(SUITES)}")
        low = [f for f in self.families if self.top_rank(f) < MIN_RANK[f]]
        if low:
            raise DegenError(f"max rank too small for families {low} (minima {[MIN_RANK[f] for f in low]})")
        if self.lambda_bound < 0:
            raise DegenError("lambda bound must be nonnegative")

    def top_rank(self, family: str) -> int:
        return self.d_max_rank if (family == "D" and self.d_max_rank is not None) else self.max_rank


def _cuts_str(c) -> str:
    return ",".join(map(str, c))


class _Unit:
    """Collects cases of one (suite, family, rank)."""

    def __init__(self, suite: str, rs: RootSystem, timing: bool):
        self.suite, self.rs, self.timing = suite, rs, timing
        self.cases: list[Case] = []

    def check(self, cuts, case: str, fn: Callable[[], tuple[object, object]]) -> None:
        t0 = time.perf_counter()
        try:
            expected, computed = fn()
            ok = expected == computed
        except DegenError as exc:  # a domain failure inside a case is a failed case
            expected, computed, ok = "no error", f"{type(exc).__name__}: {exc}", False
        ms = round((time.perf_counter() - t0) * 1e3, 3) if self.timing else None
        self.cases.append(
            Case(self.suite, self.rs.family, self.rs.rank, _cuts_str(cuts), case, str(expected), str(computed), ok, ms)
        )


def _facets(u: _Unit, cfg: VerifyConfig) -> None:
    rs = u.rs
    cone = abelianisation_cone(rs)
    ix = rs.index
    triples = summable_pairs(rs)

    def run():
        good = 0
        for a, b, g in triples:
            bad = violated(cone, facet_witness(rs, a, b, g))
            own = {(ix[a.coords], 1), (ix[b.coords], 1), (ix[g.coords], -1)}
            if len(bad) == 1 and {(k, int(v)) for k, v in bad[0].coeffs} == own:
                good += 1
        return len(triples), good

    u.check((), "witnesses violating exactly their own inequality", run)


def _jacobi(u: _Unit, cfg: VerifyConfig) -> None:
    rs = u.rs
    u.check((), "jacobi at height point", lambda: (True, jacobi_check(graded_algebra(rs, height_point(rs)))))
    u.check((), "zero table at constant 2", lambda: (0, len(bracket_table(graded_algebra(rs, constant_point(rs, 2))))))
    for c in all_cut_sets(rs):
        u.check(c, "jacobi at relint point", lambda c=c: (True, jacobi_check(graded_algebra(rs, relint_point(dynkin_cone(rs, c))))))


def _stretch(u: _Unit, cfg: VerifyConfig) -> None:
    rs = u.rs
    bound = max(cfg.lambda_bound, 3)
    for c in all_cut_sets(rs):
        m = stretch_map(rs, c)

        def props(m=m):
            rep = psi_property_report(m, rs, bound)
            return [], rep.failures[:3]

        def closure(m=m):
            rep = closure_and_convexity_check(m, rs)
            return [], rep.failures[:3]

        u.check(c, f"lengths, pi o psi, Psi identities (grid <= {bound})", props)
        u.check(c, "closure and convexity", closure)


def _weylgroup(u: _Unit, cfg: VerifyConfig) -> None:
    rs = u.rs
    fam, n = rs.family, rs.rank
    for c in all_cut_sets(rs):
        u.check(c, "inversion set equals psi image", lambda c=c: ([], verify_prop_weylgroup(rs, c).failures))
        u.check(c, "length", lambda c=c: (len(rs.positive), len(wc_element(rs, c)[1])))
        if fam == "A":
            u.check(c, "closed-form permutation", lambda c=c: ([], wc_type_a_violations(rs, c)))
        if fam in ("B", "C"):
            u.check(c, "prefix reverses the Levi block", lambda c=c: (True, prefix_reverses_block(fam, n, len(c))))
        if fam != "C":
            for i in range({"A": n, "B": n - 1, "D": n - 2}[fam]):
                u.check(c, f"extremal columns i={i + 1}", lambda c=c, i=i + 1: (True, bool(extremal_columns(rs, c, i))))


def _laiso(u: _Unit, cfg: VerifyConfig) -> None:
    rs = u.rs
    for c in all_cut_sets(rs):

        def run(c=c):
            rep = verify_laiso(rs, c, relint_point(dynkin_cone(rs, c)))
            return (True, []), (rep.ok, rep.pattern_mismatches[:2] + rep.magnitude_mismatches[:2])

        u.check(c, "bracket pattern and sign rescaling", run)


def _dims(u: _Unit, cfg: VerifyConfig) -> None:
    rs = u.rs
    closed = classical_fundamental_dims(rs.family, rs.rank)
    grid = [lam for lam in weight_grid(rs.rank, cfg.lambda_bound) if sum(lam) > 1] if cfg.lambda_bound else []
    memo = CharacterMemo()
    for c in all_cut_sets(rs):
        for k in range(1, rs.rank + 1):
            lam = fundamental(rs, k)
            u.check(
                c,
                f"fundamental k={k}",
                lambda c=c, lam=lam, k=k: ((closed[k], closed[k]), (weyl_dim(rs, lam), stretched_dim(rs, c, lam, memo))),
            )
        for lam in grid:
            u.check(c, f"lambda={lam}", lambda c=c, lam=lam: (weyl_dim(rs, lam), stretched_dim(rs, c, lam, memo)))


def _polytopes(u: _Unit, cfg: VerifyConfig) -> None:
    rs = u.rs
    for c in all_cut_sets(rs):
        def tri(c=c):
            big, _, w = wc_element(rs, c)
            return True, is_triangular(big, w)

        u.check(c, "w_c triangular", tri)
        if rs.family == "C":
            u.check(c, "embedded w_c equals w_c'", lambda c=c: (True, wc_embedding_matches(rs, c)))
    weights = [fundamental(rs, k) for k in range(1, rs.rank + 1)]
    if cfg.lambda_bound:
        weights = [lam for lam in weight_grid(rs.rank, cfg.lambda_bound) if any(lam)]
    for lam in weights:
        u.check((), f"lattice points lambda={lam}", lambda lam=lam: (weyl_dim(rs, lam), lattice_point_count(rs, lam)))


def _wedge(u: _Unit, cfg: VerifyConfig) -> None:
    rs = u.rs
    rng = random.Random(f"{cfg.seed}:{rs.family}{rs.rank}")
    cuts = list(all_cut_sets(rs))
    points = [("height point", height_point(rs))]
    points += [(f"relint c={{{_cuts_str(c)}}}", relint_point(dynkin_cone(rs, c))) for c in cuts]
    points += [(f"random #{j}", random_cone_point(abelianisation_cone(rs), rng)) for j in range(3)]
    for k in wedge_range(rs.family, rs.rank):
        m = build_wedge_module(rs, k)
        u.check((), f"k={k} operators integral and [e,f]=h", lambda m=m: ((True, []), (m.is_integral(), module_violations(m)[:2])))
        for name, d in points:
            u.check((), f"k={k} filtration total at {name}", lambda m=m, d=d: (m.dim, sum(filtration_dims(m, d).values())))
        lam = fundamental(rs, k)
        for c in cuts:

            def three(c=c, k=k, lam=lam):
                span = demazure_span(rs, c, k)
                w = weyl_dim(rs, lam)
                return (w, w, w, True), (span.dim, w, stretched_dim(rs, c, lam), span.prefix_ok)

            u.check(c, f"k={k} span = weyl = character, prefix kept", three)


RUNNERS = {
    "facets": _facets,
    "jacobi": _jacobi,
    "stretch": _stretch,
    "weylgroup": _weylgroup,
    "laiso": _laiso,
    "dims": _dims,
    "polytopes": _polytopes,
    "wedge": _wedge,
}


def units(cfg: VerifyConfig) -> Iterator[tuple[str, str, int]]:
    for suite in cfg.suites:
        for fam in cfg.families:
            if fam not in SUITE_FAMILIES.get(suite, FAMILIES):
                continue
            for n in range(MIN_RANK[fam], cfg.top_rank(fam) + 1):
                yield suite, fam, n


def run_unit(cfg: VerifyConfig, suite: str, fam: str, n: int) -> list[Case]:
    u = _Unit(suite, build_root_system(fam, n), cfg.timing)
    RUNNERS[suite](u, cfg)
    return u.cases


def _run_unit_args(args) -> list[Case]:
    return run_unit(*args)


def verify_suite(cfg: VerifyConfig) -> Report:
    work = [(cfg, s, f, n) for s, f, n in units(cfg)]
    if cfg.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_unit_args, work))
    else:
        results = [_run_unit_args(w) for w in work]
    order = {s: k for k, s in enumerate(SUITES)}
    cases = [c for chunk in results for c in chunk]
    cases.sort(key=lambda c: (order[c.suite], FAMILIES.index(c.family), c.rank, (len(c.cuts), c.cuts)))
    return Report(cases, config_dict(cfg), cfg.seed, None, __version__)
