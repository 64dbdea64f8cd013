"""Verification reports and their JSON / CSV / text serializations.

JSON layout (``"schema": 1``)::

    {
      "schema": 1,
      "tool": "degen",
      "version": "...",
      "config": {...},            # the VerifyConfig that produced the report
      "seed": 0,
      "timestamp": "...",         # omitted with --no-timestamp
      "summary": {"cases": N, "passed": P, "failed": F},
      "cases": [{"suite", "family", "rank", "cuts", "case",
                 "expected", "computed", "pass", "runtime_ms"}, ...]
    }

``runtime_ms`` is null when timing is disabled, so that identical
configurations give byte-identical reports.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Any

SCHEMA = 1
CSV_FIELDS = ("suite", "family", "rank", "cuts", "case", "expected", "computed", "pass", "runtime_ms")


@dataclass(frozen=True)
class Case:
    suite: str
    family: str
    rank: int
    cuts: str
    case: str
    expected: str
    computed: str
    passed: bool
    runtime_ms: float | None = None

    @property
    def key(self) -> tuple:
        return (self.suite, self.family, self.rank, self.cuts, self.case)

    def as_row(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "family": self.family,
            "rank": self.rank,
            "cuts": self.cuts,
            "case": self.case,
            "expected": self.expected,
            "computed": self.computed,
            "pass": self.passed,
            "runtime_ms": self.runtime_ms,
        }

    @classmethod
    def from_row(cls, row: dict) -> "Case":
        rt = row.get("runtime_ms")
        return cls(
            row["suite"],
            row["family"],
            int(row["rank"]),
            row["cuts"],
            row["case"],
            str(row["expected"]),
            str(row["computed"]),
            row["pass"] if isinstance(row["pass"], bool) else row["pass"] == "true",
            None if rt in (None, "") else float(rt),
        )


@dataclass
class Report:
    cases: list[Case] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    seed: int | None = None
    timestamp: str | None = None
    version: str = ""

    @property
    def passed(self) -> int:
        return sum(1 for c in self.cases if c.passed)

    @property
    def failed(self) -> int:
        return len(self.cases) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def summary(self) -> dict[str, int]:
        return {"cases": len(self.cases), "passed": self.passed, "failed": self.failed}

    def sorted(self) -> "Report":
        return Report(sorted(self.cases, key=lambda c: c.key), self.config, self.seed, self.timestamp, self.version)


def to_json(r: Report) -> str:
    doc: dict[str, Any] = {"schema": SCHEMA, "tool": "degen", "version": r.version, "config": r.config, "seed": r.seed}
    if r.timestamp is not None:
        doc["timestamp"] = r.timestamp
    doc["summary"] = r.summary()
    doc["cases"] = [c.as_row() for c in r.cases]
    return json.dumps(doc, indent=2) + "\n"


def from_json(text: str) -> Report:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported report schema {doc.get('schema')!r}")
    rep = Report(
        [Case.from_row(c) for c in doc["cases"]],
        doc.get("config", {}),
        doc.get("seed"),
        doc.get("timestamp"),
        doc.get("version", ""),
    )
    if rep.summary() != doc["summary"]:
        raise ValueError("summary does not match the cases")
    return rep


def to_csv(r: Report) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for c in r.cases:
        row = c.as_row()
        row["pass"] = "true" if c.passed else "false"
        row["runtime_ms"] = "" if c.runtime_ms is None else f"{c.runtime_ms:.3f}"
        w.writerow(row)
    return buf.getvalue()


def from_csv(text: str) -> list[Case]:
    return [Case.from_row(row) for row in csv.DictReader(io.StringIO(text))]


def to_text(r: Report) -> str:
    lines = []
    for c in r.cases:
        mark = "PASS" if c.passed else "FAIL"
        cuts = "{" + c.cuts + "}"
        lines.append(f"{mark} {c.suite:10} {c.family}{c.rank} c={cuts:9} {c.case}: expected {c.expected}, got {c.computed}")
    s = r.summary()
    lines.append(f"{s['cases']} cases, {s['passed']} passed, {s['failed']} failed")
    return "\n".join(lines) + "\n"


def emit_report(r: Report, fmt: str) -> bytes:
    if fmt == "json":
        return to_json(r).encode()
    if fmt == "csv":
        return to_csv(r).encode()
    if fmt == "text":
        return to_text(r).encode()
    raise ValueError(f"unknown format {fmt!r}")


def config_dict(cfg) -> dict:
    d = asdict(cfg)
    d.pop("output", None)
    return {k: list(v) if isinstance(v, tuple) else v for k, v in d.items()}
