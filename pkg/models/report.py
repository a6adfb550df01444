"""Verification report models."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from green_enums import CheckStatus


@dataclass
class CheckResult:
    """Outcome of one named check at one parameter cell."""
    name: str
    params: Dict[str, Any]
    status: CheckStatus
    witness: Optional[Dict[str, Any]] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status != CheckStatus.FAIL


class CheckEntry(BaseModel):
    """Serialized check."""
    name: str
    params: Dict[str, Any]
    status: CheckStatus
    witness: Optional[Dict[str, Any]] = None


class ReportSummary(BaseModel):
    """Counts per status."""
    passed: int = Field(0, serialization_alias='pass')
    fail: int = 0
    skipped: int = 0


class Report(BaseModel):
    """Machine-readable verification report."""
    grid: List[Dict[str, Any]] = Field(default_factory=list)
    checks: List[CheckEntry] = Field(default_factory=list)
    summary: ReportSummary = Field(default_factory=ReportSummary)

    @classmethod
    def from_results(cls, grid: List[Dict[str, Any]], results: List[CheckResult]) -> "Report":
        """Assemble a report; totals are recomputed from the entries."""
        checks = [
            CheckEntry(name=r.name, params=r.params, status=r.status, witness=r.witness)
            for r in results
        ]
        summary = ReportSummary(
            passed=sum(1 for r in results if r.status == CheckStatus.PASS),
            fail=sum(1 for r in results if r.status == CheckStatus.FAIL),
            skipped=sum(1 for r in results if r.status == CheckStatus.SKIPPED),
        )
        return cls(grid=grid, checks=checks, summary=summary)

    @property
    def ok(self) -> bool:
        return self.summary.fail == 0

    def failures(self) -> List[CheckEntry]:
        return [c for c in self.checks if c.status == CheckStatus.FAIL]

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready dict using the published key names."""
        return self.model_dump(mode='json', by_alias=True)
