"""Decision outcomes with reproducible witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field


PASS = "pass"
FAIL = "fail"
BOUNDED_PASS = "bounded-pass"
BUDGET_EXCEEDED = "budget-exceeded"


@dataclass
class Verdict:
    status: str
    method: str
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status in (PASS, BOUNDED_PASS)

    def to_doc(self) -> dict:
        doc = {"status": self.status, "method": self.method}
        if self.witness is not None:
            doc["witness"] = self.witness
        if self.details:
            doc["details"] = self.details
        return doc
