"""Verification report records and their CSV/JSON serialization.

Output files are byte-deterministic for a given configuration: runtimes are
measured but only included when explicitly requested, since wall-clock noise
would break reproducible diffs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1

CSV_COLUMNS = ("check_id", "reference", "residual", "tolerance", "passed")


def fmt(value: float) -> str:
    """17 significant digits: round-trip safe and diff-stable."""
    return format(value, ".17g")


@dataclass
class CheckRecord:
    check_id: str
    reference: str  # the mathematical statement being checked
    residual: float
    tolerance: float
    passed: bool
    runtime_ms: float = 0.0


@dataclass
class VerificationReport:
    suite: str
    d: int
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.checks)

    @property
    def passed_count(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def failed_count(self) -> int:
        return sum(1 for c in self.checks if not c.passed)

    @property
    def all_passed(self) -> bool:
        return self.failed_count == 0

    def to_dict(self, include_timings: bool = False) -> dict:
        checks = []
        for c in self.checks:
            rec = {
                "check_id": c.check_id,
                "reference": c.reference,
                "residual": c.residual,
                "tolerance": c.tolerance,
                "passed": c.passed,
            }
            if include_timings:
                rec["runtime_ms"] = c.runtime_ms
            checks.append(rec)
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "d": self.d,
            "checks": checks,
            "summary": {
                "total": self.total,
                "passed": self.passed_count,
                "failed": self.failed_count,
            },
        }

    def to_json(self, include_timings: bool = False) -> str:
        return json.dumps(self.to_dict(include_timings), indent=2) + "\n"

    def to_csv(self, include_timings: bool = False) -> str:
        cols = CSV_COLUMNS + (("runtime_ms",) if include_timings else ())
        lines = [",".join(cols)]
        for c in self.checks:
            row = [c.check_id, c.reference.replace(",", ";"),
                   fmt(c.residual), fmt(c.tolerance), str(c.passed).lower()]
            if include_timings:
                row.append(fmt(c.runtime_ms))
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"

    def render_console(self) -> str:
        lines = [f"suite {self.suite} (d={self.d})"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.check_id}: residual {c.residual:.3e} "
                         f"vs tol {c.tolerance:.3e}  ({c.runtime_ms:.0f} ms)")
        lines.append(f"  {self.passed_count}/{self.total} checks passed")
        return "\n".join(lines)


def report_from_dict(data: dict) -> VerificationReport:
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {data.get('schema_version')}")
    rep = VerificationReport(suite=data["suite"], d=data["d"])
    for rec in data["checks"]:
        rep.checks.append(CheckRecord(
            check_id=rec["check_id"], reference=rec["reference"],
            residual=float(rec["residual"]), tolerance=float(rec["tolerance"]),
            passed=bool(rec["passed"]), runtime_ms=float(rec.get("runtime_ms", 0.0))))
    summary = data.get("summary", {})
    if summary and summary.get("total") != len(rep.checks):
        raise ValueError("summary counts do not match check records")
    return rep
