import json
import subprocess
import sys

import pytest

from degen import suites
from degen.cli import parse_and_dispatch


def run(argv, env=None, capsys=None):
    code = parse_and_dispatch(argv, env or {})
    out = capsys.readouterr() if capsys else None
    return code, out


def test_wc_example(capsys):
    code, out = run(["wc", "--family", "A", "--rank", "2", "--cuts", "1"], capsys=capsys)
    assert code == 0
    assert "[2, 3, 1]" in out.out and "3 inversions" in out.out


def test_invalid_rank_exits_2(capsys):
    code, out = run(["roots", "--family", "D", "--rank", "3"], capsys=capsys)
    assert code == 2 and out.err


def test_unknown_flag_exits_2(capsys):
    code, out = run(["roots", "--bogus"], capsys=capsys)
    assert code == 2 and "usage" in out.err


def test_no_subcommand_exits_2(capsys):
    code, _ = run([], capsys=capsys)
    assert code == 2


def test_env_defaults_and_flag_precedence(capsys):
    env = {"DEGEN_FAMILY": "A", "DEGEN_RANK": "3"}
    code, out = run(["wc", "--cuts", "1,2", "--format", "json"], env, capsys)
    assert code == 0 and json.loads(out.out)["rank"] == 3
    code, out = run(["wc", "--rank", "2", "--cuts", "1", "--format", "json"], env, capsys)
    assert code == 0 and json.loads(out.out)["rank"] == 2


def test_bad_env_value_exits_2(capsys):
    code, _ = run(["wc", "-c", "1"], {"DEGEN_FAMILY": "A", "DEGEN_RANK": "2", "DEGEN_FORMAT": "xml"}, capsys)
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["roots", "-f", "B", "-n", "3"],
        ["cone", "-f", "A", "-n", "2", "-c", "1"],
        ["cone", "-f", "A", "-n", "2", "--abelianisation", "--action", "membership", "--point", "2,2,2", "--mode", "relint"],
        ["cone", "-f", "A", "-n", "3", "-c", "1", "--action", "relint-point"],
        ["cone", "-f", "A", "-n", "2", "--action", "witness", "--pair", "1,1;2,2"],
        ["stretch", "-f", "B", "-n", "3", "-c", "1", "--action", "sigma"],
        ["stretch", "-f", "B", "-n", "3", "-c", "1", "--action", "psi", "--root", "1,2"],
        ["stretch", "-f", "B", "-n", "3", "-c", "1", "--action", "pi", "--root", "2,3b"],
        ["stretch", "-f", "B", "-n", "3", "-c", "1", "--action", "Psi", "--weight", "1,0,1"],
        ["char", "-f", "B", "-n", "3", "-c", "1", "--weight", "0,0,1", "--terms"],
        ["polytope", "-f", "C", "-n", "2", "--weight", "1,1"],
        ["filtration", "-f", "A", "-n", "2", "-k", "1", "--degree", "1,1,1"],
    ],
)
def test_commands_succeed(argv, capsys):
    for fmt in ("text", "json"):
        code, out = run(argv + ["--format", fmt], capsys=capsys)
        assert code == 0, out.err
        if fmt == "json":
            json.loads(out.out)


def test_char_dimension(capsys):
    code, out = run(["char", "-f", "B", "-n", "3", "-c", "1", "--weight", "0,0,1", "--format", "json"], capsys=capsys)
    doc = json.loads(out.out)
    assert code == 0 and doc["weyl_dim"] == doc["demazure_dim"] == 8


def test_polytope_count(capsys):
    code, out = run(["polytope", "-f", "C", "-n", "2", "--weight", "1,1", "--format", "json"], capsys=capsys)
    assert code == 0 and json.loads(out.out)["count"] == 16


def test_filtration_outside_cone_exits_2(capsys):
    code, _ = run(["filtration", "-f", "A", "-n", "2", "-k", "1", "--degree", "1,3,1"], capsys=capsys)
    assert code == 2


def test_verify_deterministic(tmp_path, capsys):
    argv = ["verify", "--suite", "facets,weylgroup", "--families", "A,B", "--max-rank", "3", "--no-timestamp"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(argv + ["-o", str(a)], capsys=capsys)[0] == 0
    assert run(argv + ["-o", str(b)], capsys=capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    c = tmp_path / "c.json"
    assert run(argv + ["-o", str(c), "--jobs", "2"], capsys=capsys)[0] == 0
    assert json.loads(c.read_text())["cases"] == doc["cases"]
    assert "timestamp" not in doc and all(c["runtime_ms"] is None for c in doc["cases"])


def test_verify_csv(capsys):
    code, out = run(["verify", "--suite", "facets", "--families", "A", "--max-rank", "3", "--format", "csv"], capsys=capsys)
    lines = out.out.strip().splitlines()
    assert code == 0 and lines[0].startswith("suite,family,rank,cuts,case")
    assert len(lines) == 1 + 3


def test_verify_empty_families(capsys):
    code, _ = run(["verify", "--families", ""], capsys=capsys)
    assert code == 2


def test_verify_unwritable_output(capsys):
    code, _ = run(["verify", "--suite", "facets", "--families", "A", "--max-rank", "2", "-o", "/nonexistent/x.json"], capsys=capsys)
    assert code == 2


def test_verify_failure_exits_1(monkeypatch, capsys):
    def broken(u, cfg):
        u.check((), "always wrong", lambda: (1, 2))

    monkeypatch.setitem(suites.RUNNERS, "facets", broken)
    code, out = run(["verify", "--suite", "facets", "--families", "A", "--max-rank", "2", "--format", "text"], capsys=capsys)
    assert code == 1 and "FAIL" in out.out


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "degen.cli", "roots", "-f", "A", "-n", "1"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout
