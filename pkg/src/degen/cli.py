"""The ``degen`` command line.

Exit status: 0 on success, 1 when a verification case fails, 2 on usage,
domain or I/O errors. Every flag can also be given as an environment variable
``DEGEN_<FLAG>`` (dashes become underscores); an explicit flag wins.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction
from typing import Sequence

from degen import __version__
from degen.cones import (
    DegreeVector,
    abelianisation_cone,
    dynkin_cone,
    facet_witness,
    height_point,
    constant_point,
    membership,
    relint_point,
    violated,
)
from degen.demazure import demazure_character, stretched_dim, weyl_dim
from degen.errors import DegenError
from degen.gradedmod import build_wedge_module, filtration_dims
from degen.polytopes import lattice_point_count, marked_polytope
from degen.report import emit_report
from degen.rootsys import FAMILIES, build_root_system, root_data
from degen.stretch import pi_section, psi_root, psi_weight, stretch_map
from degen.suites import SUITES, VerifyConfig, verify_suite
from degen.weyl import build_wc, extremal_columns, inversion_set_from_word, word_to_element


class UsageError(DegenError):
    pass


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _fracs(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x) for x in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from exc


def _family(text: str) -> str:
    f = text.strip().upper()
    if f not in FAMILIES:
        raise argparse.ArgumentTypeError(f"family must be one of {', '.join(FAMILIES)}")
    return f


def _families(text: str) -> tuple[str, ...]:
    out = tuple(_family(x) for x in text.replace(",", "") if x.strip())
    return out


def _truthy(text: str) -> bool:
    return text.strip().lower() in ("1", "true", "yes", "on")


def _system_args(p: argparse.ArgumentParser, cuts: bool = True) -> None:
    p.add_argument("--family", "-f", type=_family, required=True, help="A, B, C or D")
    p.add_argument("--rank", "-n", type=int, required=True)
    if cuts:
        p.add_argument("--cuts", "-c", type=_ints, default=(), help="comma-separated cut set, e.g. 1,3")
    p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="degen", description="Dynkin abelianisation toolkit")
    parser.add_argument("--version", action="version", version=f"degen {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="list positive roots")
    _system_args(p, cuts=False)

    p = sub.add_parser("cone", help="Dynkin cones: build, membership, relint point, facet witness")
    _system_args(p)
    p.add_argument("--action", choices=("build", "membership", "relint-point", "witness"), default="build")
    p.add_argument("--abelianisation", action="store_true", help="use the full abelianisation cone")
    p.add_argument("--point", type=_fracs, help="degree vector in root order (membership)")
    p.add_argument("--mode", choices=("closure", "relint"), default="closure")
    p.add_argument("--pair", help="two root labels a;b for the facet witness of a+b")

    p = sub.add_parser("stretch", help="sigma, psi, pi and Psi")
    _system_args(p)
    p.add_argument("--action", choices=("sigma", "psi", "pi", "Psi"), default="sigma")
    p.add_argument("--root", help="root label (psi: small system, pi: stretched system)")
    p.add_argument("--weight", type=_ints, help="fundamental-weight coordinates (Psi)")

    p = sub.add_parser("wc", help="the element w_c: word, inversions, extremal columns")
    _system_args(p)
    p.add_argument("--extremal", type=int, help="index i for the extremal columns")

    p = sub.add_parser("char", help="Demazure character dimension of Psi(lambda) against Weyl")
    _system_args(p)
    p.add_argument("--weight", type=_ints, required=True)
    p.add_argument("--terms", action="store_true", help="also print the weights of the character")

    p = sub.add_parser("polytope", help="FFLV lattice point count (types A and C)")
    _system_args(p, cuts=False)
    p.add_argument("--weight", type=_ints, required=True)
    p.add_argument("--inequalities", action="store_true", help="print the inequality system as JSON")

    p = sub.add_parser("filtration", help="graded dimensions of a fundamental wedge module")
    _system_args(p, cuts=False)
    p.add_argument("-k", "--k", type=int, required=True, help="wedge power")
    p.add_argument("--degree", default="height", help="height, constant, relint:<cuts> or a vector")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES)} or 'all'; repeatable")
    p.add_argument("--families", type=_families, default=FAMILIES)
    p.add_argument("--max-rank", type=int, default=3)
    p.add_argument("--d-max-rank", type=int)
    p.add_argument("--lambda-bound", type=int, default=0, help="also run the weight grid with coordinates <= bound")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    p.add_argument("--no-timestamp", action="store_true", help="omit timestamp and runtimes")
    return parser


def _apply_env(parser: argparse.ArgumentParser, argv: Sequence[str], environ) -> None:
    """Turn DEGEN_* variables into defaults of the chosen subcommand, so explicit
    flags still win."""
    subs = [a for a in parser._actions if isinstance(a, argparse._SubParsersAction)]
    chosen = [subs[0].choices[a] for a in argv if a in subs[0].choices][:1]
    for sp in chosen:
        for action in sp._actions:
            if not action.option_strings or action.dest in ("help",):
                continue
            raw = environ.get("DEGEN_" + action.dest.upper())
            if raw is None:
                continue
            if isinstance(action, argparse._StoreTrueAction):
                value = _truthy(raw)
            elif isinstance(action, argparse._AppendAction):
                value = [x for x in raw.split(",") if x]
            else:
                value = action.type(raw) if action.type else raw
                if action.choices is not None and value not in action.choices:
                    raise UsageError(f"DEGEN_{action.dest.upper()}={raw!r} is not one of {list(action.choices)}")
            action.default = value
            action.required = False


# -- commands ----------------------------------------------------------------------------


def _out(args, text_lines: list[str], doc: dict) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(doc, indent=2, default=str))
    else:
        print("\n".join(text_lines))


def cmd_roots(args) -> int:
    rs = build_root_system(args.family, args.rank)
    rows = []
    for r in rs.positive:
        d = root_data(rs, r)
        rows.append({"label": str(r.label), "coords": list(r.coords), "height": d["height"],
                     "support": sorted(d["support"]), "length2": str(d["length2"])})
    lines = [f"{x['label']:>6}  {x['coords']}  ht={x['height']}  |b|^2={x['length2']}" for x in rows]
    _out(args, lines + [f"{len(rows)} positive roots"], {"system": str(rs.id), "roots": rows})
    return 0


def _frac_str(v: Fraction) -> str:
    return str(v)


def cmd_cone(args) -> int:
    rs = build_root_system(args.family, args.rank)
    cone = abelianisation_cone(rs) if args.abelianisation else dynkin_cone(rs, args.cuts)
    if args.action == "build":
        if args.format == "json":
            print(cone.to_json())
        else:
            for c in cone.constraints:
                terms = " + ".join(f"{v}*d[{rs.positive[k].label}]" for k, v in c.coeffs)
                print(f"[{c.tag}] {terms} {c.relation} 0")
            print(f"{len(cone.inequalities())} inequalities, {len(cone.equalities())} equalities")
        return 0
    if args.action == "relint-point":
        d = relint_point(cone)
        _out(args, [", ".join(f"{k}={v}" for k, v in d.as_map().items())], {"point": {k: str(v) for k, v in d.as_map().items()}})
        return 0
    if args.action == "membership":
        if args.point is None:
            raise UsageError("--point is required for membership")
        d = DegreeVector.of(rs, args.point)
        ok = membership(cone, d, args.mode)
        bad = [f"[{c.tag}] {c.coeffs}" for c in violated(cone, d)]
        _out(args, [f"{args.mode}: {ok}"] + bad, {"mode": args.mode, "member": ok, "violated": bad})
        return 0
    if not args.pair:
        raise UsageError("--pair a;b is required for witness")
    a, b = (rs.root(x.strip()) for x in args.pair.split(";"))
    g = rs.root(tuple(x + y for x, y in zip(a.coords, b.coords)))
    d = facet_witness(rs, a, b, g)
    full = abelianisation_cone(rs)
    bad = violated(full, d)
    vals = {k: str(v) for k, v in d.as_map().items()}
    _out(args, [f"witness {vals}", f"violates {len(bad)} inequality(ies)"], {"witness": vals, "violated": len(bad)})
    return 0


def cmd_stretch(args) -> int:
    rs = build_root_system(args.family, args.rank)
    m = stretch_map(rs, args.cuts)
    if args.action == "sigma":
        doc = {"sigma": list(m.sigma), "missing": sorted(m.missing)}
        _out(args, [f"sigma = {list(m.sigma)}", f"missing = {sorted(m.missing)}"], doc)
    elif args.action == "psi":
        roots = [rs.root(args.root)] if args.root else list(rs.positive)
        pairs = [(str(b.label), str(psi_root(m, rs, b).label)) for b in roots]
        _out(args, [f"psi({a}) = {b}" for a, b in pairs], {"psi": dict(pairs)})
    elif args.action == "pi":
        tgt = m.target
        roots = [tgt.root(args.root)] if args.root else list(tgt.positive)
        rows = []
        for b in roots:
            r = pi_section(m, b)
            rows.append({"root": str(b.label), "kind": r.kind, "coords": [str(x) for x in r.coords], "index": r.index})
        _out(args, [f"pi({x['root']}) = {x['coords']} [{x['kind']}]" for x in rows], {"pi": rows})
    else:
        if args.weight is None:
            raise UsageError("--weight is required for Psi")
        big = psi_weight(m, args.weight)
        _out(args, [f"Psi{tuple(args.weight)} = {tuple(big)}"], {"weight": list(args.weight), "Psi": list(big)})
    return 0


def cmd_wc(args) -> int:
    rs = build_root_system(args.family, args.rank)
    m = stretch_map(rs, args.cuts)
    big = m.target
    word = build_wc(rs, args.cuts)
    w, reduced = word_to_element(big, word)
    inv = inversion_set_from_word(big, word)
    doc = {
        "family": rs.family,
        "rank": rs.rank,
        "cuts": list(args.cuts),
        "system": str(big.id),
        "word": list(word),
        "reduced": reduced,
        "one_line": list(w.one_line()),
        "inversions": [str(r.label) for r in inv],
    }
    lines = [f"word {list(word)} in {big.id} (reduced: {reduced})", f"one-line {list(w.one_line())}",
             f"{len(inv)} inversions: {'; '.join(doc['inversions'])}"]
    if args.extremal is not None:
        cols = extremal_columns(rs, args.cuts, args.extremal)
        doc["extremal"] = list(cols)
        lines.append(f"extremal columns for i={args.extremal}: {list(cols)}")
    _out(args, lines, doc)
    return 0


def cmd_char(args) -> int:
    rs = build_root_system(args.family, args.rank)
    got = stretched_dim(rs, args.cuts, args.weight)
    want = weyl_dim(rs, args.weight)
    doc = {"weight": list(args.weight), "cuts": list(args.cuts), "demazure_dim": got, "weyl_dim": want}
    lines = [f"dim Demazure = {got}, Weyl dimension = {want}, equal: {got == want}"]
    if args.terms:
        m = stretch_map(rs, args.cuts)
        ch = demazure_character(m.target, build_wc(rs, args.cuts), psi_weight(m, args.weight))
        doc["character"] = ch.to_json()
        lines += [f"  {list(w)}: {k}" for w, k in sorted(ch.terms.items())]
    _out(args, lines, doc)
    return 0 if got == want else 1


def cmd_polytope(args) -> int:
    rs = build_root_system(args.family, args.rank)
    if args.inequalities:
        print(marked_polytope(rs, args.weight).to_json())
        return 0
    n = lattice_point_count(rs, args.weight)
    _out(args, [f"{n} lattice points (Weyl dimension {weyl_dim(rs, args.weight)})"], {"count": n})
    return 0


def _degree(rs, spec: str) -> DegreeVector:
    if spec == "height":
        return height_point(rs)
    if spec == "constant":
        return constant_point(rs, 2)
    if spec.startswith("relint"):
        cuts = _ints(spec.partition(":")[2])
        return relint_point(dynkin_cone(rs, cuts))
    return DegreeVector.of(rs, _fracs(spec))


def cmd_filtration(args) -> int:
    rs = build_root_system(args.family, args.rank)
    m = build_wedge_module(rs, args.k)
    g = filtration_dims(m, _degree(rs, args.degree))
    lines = ["degree,dimension"] + [f"{k},{v}" for k, v in g.items()]
    _out(args, lines, {"module_dim": m.dim, "graded": {str(k): v for k, v in g.items()}})
    return 0


def cmd_verify(args) -> int:
    suites: list[str] = []
    for s in args.suite or ["all"]:
        suites += [x for x in s.split(",") if x]
    if "all" in suites:
        suites = list(SUITES)
    cfg = VerifyConfig(
        families=tuple(args.families),
        max_rank=args.max_rank,
        lambda_bound=args.lambda_bound,
        suites=tuple(dict.fromkeys(suites)),
        d_max_rank=args.d_max_rank,
        seed=args.seed,
        jobs=args.jobs,
        timing=not args.no_timestamp,
        output=args.output,
        fmt=args.format,
    )
    rep = verify_suite(cfg)
    if not args.no_timestamp:
        rep.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    data = emit_report(rep, args.format)
    if args.output:
        try:
            with open(args.output, "wb") as fh:
                fh.write(data)
        except OSError as exc:
            print(f"degen: cannot write {args.output}: {exc}", file=sys.stderr)
            return 2
        s = rep.summary()
        print(f"{s['cases']} cases, {s['passed']} passed, {s['failed']} failed", file=sys.stderr)
    else:
        sys.stdout.write(data.decode())
    return 0 if rep.ok else 1


COMMANDS = {
    "roots": cmd_roots,
    "cone": cmd_cone,
    "stretch": cmd_stretch,
    "wc": cmd_wc,
    "char": cmd_char,
    "polytope": cmd_polytope,
    "filtration": cmd_filtration,
    "verify": cmd_verify,
}


def parse_and_dispatch(argv: Sequence[str] | None = None, environ=None) -> int:
    parser = build_parser()
    try:
        argv = list(sys.argv[1:] if argv is None else argv)
        _apply_env(parser, argv, os.environ if environ is None else environ)
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (DegenError, argparse.ArgumentTypeError) as exc:
        print(f"degen: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args)
    except DegenError as exc:
        print(f"degen: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(parse_and_dispatch())


if __name__ == "__main__":
    main()
