from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional


class Status(str, Enum):
    PASS = "Pass"
    FAIL = "Fail"
    ERROR = "Error"


@dataclass(frozen=True)
class Witness:
    """First disagreeing index with both sides' values there."""

    index: int
    lhs: int
    rhs: int

    def to_json(self) -> Dict[str, str]:
        return {"index": str(self.index), "lhs": str(self.lhs), "rhs": str(self.rhs)}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Witness":
        return cls(int(data["index"]), int(data["lhs"]), int(data["rhs"]))


@dataclass
class VerificationReport:
    name: str
    status: Status
    checked_through: int
    elapsed_ms: float = 0.0
    first_failure: Optional[Witness] = None
    detail: str = ""
    label: str = ""

    def __post_init__(self) -> None:
        if self.status is Status.FAIL and self.first_failure is None:
            raise ValueError(f"failing report {self.name!r} must carry a witness")

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "name": self.name,
            "status": self.status.value,
            "checked_through": str(self.checked_through),
            "elapsed_ms": f"{self.elapsed_ms:.3f}",
        }
        if self.first_failure is not None:
            data["first_failure"] = self.first_failure.to_json()
        if self.detail:
            data["detail"] = self.detail
        if self.label:
            data["label"] = self.label
        return data

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "VerificationReport":
        failure = data.get("first_failure")
        return cls(
            name=data["name"],
            status=Status(data["status"]),
            checked_through=int(data["checked_through"]),
            elapsed_ms=float(data.get("elapsed_ms", "0")),
            first_failure=Witness.from_json(failure) if failure else None,
            detail=data.get("detail", ""),
            label=data.get("label", ""),
        )


def exit_code(reports: Iterable[VerificationReport]) -> int:
    """0 when every report passes, 2 if any errored, else 1."""
    statuses = {r.status for r in reports}
    if Status.ERROR in statuses:
        return 2
    if Status.FAIL in statuses:
        return 1
    return 0


def dumps(document: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def report_document(reports: List[VerificationReport], engine: str, parameters: Dict[str, Any], ledger: Optional[Dict[str, str]] = None) -> Dict[str, Any]:
    return {
        "engine": engine,
        "ledger": ledger or {},
        "parameters": {k: str(v) for k, v in parameters.items()},
        "reports": [r.to_json() for r in reports],
    }


def _clip(text: str, width: int) -> str:
    return text if len(text) <= width else text[: width - 3] + "..."


def render_table(reports: List[VerificationReport]) -> str:
    rows = [("entry", "status", "through", "first failure", "ms")]
    for r in reports:
        if r.first_failure is not None:
            w = r.first_failure
            failure = _clip(f"n={w.index}: {w.lhs} != {w.rhs}", 48)
        else:
            failure = _clip(r.detail, 48) if r.status is Status.ERROR else ""
        status = r.status.value + (f" ({r.label})" if r.label else "")
        rows.append((r.name, status, str(r.checked_through), failure, f"{r.elapsed_ms:.0f}"))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    counts = {s: sum(1 for r in reports if r.status is s) for s in Status}
    lines.append("")
    lines.append(f"{counts[Status.PASS]} passed, {counts[Status.FAIL]} failed, {counts[Status.ERROR]} errors")
    return "\n".join(lines)
