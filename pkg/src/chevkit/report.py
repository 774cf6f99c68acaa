from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Iterator

VERIFIED = "verified"
REFUTED = "refuted"
SKIPPED = "skipped"
INCONCLUSIVE = "inconclusive"


@dataclass
class CheckReport:
    """Outcome of one verification check.

    ``verified`` requires ``cases == expected_cases`` whenever the latter is
    known; partial coverage is reported as ``inconclusive``.
    """

    id: str
    paper_ref: str
    status: str = VERIFIED
    system: str | None = None
    cases: int = 0
    expected_cases: int | None = None
    witnesses: dict[str, Any] = field(default_factory=dict)
    counterexample: Any = None
    reason: str | None = None
    details: dict[str, Any] = field(default_factory=dict)
    ms: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status in (VERIFIED, SKIPPED)

    def refute(self, counterexample: Any) -> None:
        self.status = REFUTED
        if self.counterexample is None:
            self.counterexample = counterexample

    def finish(self) -> "CheckReport":
        if self.status == VERIFIED and self.expected_cases is not None and self.cases != self.expected_cases:
            self.status = INCONCLUSIVE
            self.reason = self.reason or f"covered {self.cases} of {self.expected_cases} cases"
        return self

    def to_json(self, max_witnesses: int | None = 50) -> dict[str, Any]:
        out: dict[str, Any] = {
            "id": self.id,
            "paper_ref": self.paper_ref,
            "status": self.status,
            "cases": self.cases,
            "ms": round(self.ms, 1),
        }
        if self.system is not None:
            out["system"] = self.system
        if self.expected_cases is not None:
            out["expected_cases"] = self.expected_cases
        if self.witnesses:
            keys = list(self.witnesses)
            if max_witnesses is not None:
                keys = keys[:max_witnesses]
            out["witnesses"] = {k: self.witnesses[k] for k in keys}
            out["witness_count"] = len(self.witnesses)
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.reason:
            out["reason"] = self.reason
        if self.details:
            out["details"] = self.details
        return out


LemmaReport = CheckReport


@contextmanager
def timed(report: CheckReport) -> Iterator[CheckReport]:
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.ms = (time.perf_counter() - start) * 1000.0
        report.finish()
