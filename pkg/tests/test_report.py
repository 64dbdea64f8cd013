import csv
import io
import json

import pytest
from hypothesis import given, strategies as st

from degen.errors import DegenError
from degen.report import (
    CSV_FIELDS,
    Case,
    Report,
    emit_report,
    from_csv,
    from_json,
    to_json,
)
from degen.suites import VerifyConfig, verify_suite

text = st.text(st.characters(blacklist_categories=("Cs", "Cc")), max_size=12)
cases = st.builds(
    Case,
    st.sampled_from(["facets", "dims"]),
    st.sampled_from("ABCD"),
    st.integers(1, 6),
    st.sampled_from(["", "1", "1,2"]),
    text,
    text,
    text,
    st.booleans(),
    st.one_of(st.none(), st.integers(0, 10**6).map(lambda x: x / 1000)),
)


def test_empty_report_json():
    doc = json.loads(emit_report(Report(), "json"))
    assert doc["schema"] == 1 and doc["cases"] == [] and doc["summary"]["cases"] == 0


def test_three_case_roundtrip():
    r = Report(
        [
            Case("dims", "A", 2, "1", "fundamental k=1", "3", "3", True, 1.5),
            Case("dims", "A", 2, "1", "fundamental k=2", "3", "4", False, None),
            Case("facets", "B", 3, "", "witnesses", "4", "4", True, 0.25),
        ],
        {"max_rank": 3},
        7,
        None,
        "0.1.0",
    )
    assert from_json(to_json(r)) == r


@given(st.lists(cases, max_size=8))
def test_json_roundtrip(cs):
    r = Report(cs, {}, 0, "2026-01-01T00:00:00+00:00", "x")
    assert from_json(emit_report(r, "json").decode()) == r


@given(st.lists(cases, max_size=8))
def test_csv_rows(cs):
    data = emit_report(Report(cs), "csv").decode()
    rows = list(csv.reader(io.StringIO(data)))
    assert rows[0] == list(CSV_FIELDS)
    assert len(rows) == len(cs) + 1
    assert from_csv(data) == cs


def test_summary_mismatch_rejected():
    doc = json.loads(to_json(Report([Case("dims", "A", 1, "", "x", "1", "1", True)])))
    doc["summary"]["passed"] = 0
    with pytest.raises(ValueError):
        from_json(json.dumps(doc))


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_report(Report(), "xml")


def test_config_validation():
    with pytest.raises(DegenError):
        VerifyConfig(families=())
    with pytest.raises(DegenError):
        VerifyConfig(suites=())
    with pytest.raises(DegenError):
        VerifyConfig(families=("D",), max_rank=3)
    with pytest.raises(DegenError):
        VerifyConfig(suites=("nope",))


def test_weylgroup_suite_a_up_to_4():
    rep = verify_suite(VerifyConfig(families=("A",), max_rank=4, suites=("weylgroup",)))
    assert rep.ok and rep.cases


def test_dims_suite_b3():
    rep = verify_suite(VerifyConfig(families=("B",), max_rank=3, suites=("dims",), timing=False))
    b3 = [c for c in rep.cases if c.rank == 3]
    assert len(b3) == 3 * 4 and all(c.passed for c in b3)


def test_report_is_deterministic_and_job_independent():
    cfg = VerifyConfig(families=("A", "C"), max_rank=3, suites=("facets", "stretch", "wedge"), timing=False)
    one = to_json(verify_suite(cfg))
    two = to_json(verify_suite(VerifyConfig(**{**cfg.__dict__, "jobs": 2})))
    assert one == to_json(verify_suite(cfg))
    assert json.loads(one)["cases"] == json.loads(two)["cases"]
