"""
Report types shared by every checker, and their canonical JSON form.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .rational_core import format_rational


def to_jsonable(value):
    """Convert rationals, tuples and described structures to JSON-ready values."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        return value
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if hasattr(value, "describe"):
        return value.describe()
    return str(value)


@dataclass
class LawCheck:
    law: str
    cases: int = 0
    exhaustive: bool = False
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)
    certificates: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self):
        return {
            "verdict": "pass" if self.passed else "fail",
            "law": self.law,
            "cases": self.cases,
            "exhaustive": self.exhaustive,
            "counterexamples": to_jsonable(self.counterexamples),
            "certificates": list(self.certificates),
        }


@dataclass
class LawReport:
    instance: str
    seed: int = 0
    checks: List[LawCheck] = field(default_factory=list)
    certificates: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    invalid: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def cases(self) -> int:
        return sum(check.cases for check in self.checks)

    @property
    def exhaustive(self) -> bool:
        return bool(self.checks) and all(check.exhaustive for check in self.checks)

    def add(self, check: LawCheck) -> LawCheck:
        self.checks.append(check)
        return check

    def extend(self, other: "LawReport", prefix: str = ""):
        for check in other.checks:
            if prefix:
                check.law = f"{prefix}: {check.law}"
            self.checks.append(check)
        self.certificates.extend(other.certificates)
        self.notes.extend(other.notes)
        self.invalid.extend(other.invalid)

    def check(self, law: str) -> Optional[LawCheck]:
        for item in self.checks:
            if item.law == law:
                return item
        return None

    def first_counterexample(self):
        for item in self.checks:
            if item.counterexamples:
                return item.counterexamples[0]
        return None

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "instance": self.instance,
            "cases": self.cases,
            "seed": self.seed,
            "exhaustive": self.exhaustive,
            "checks": [check.to_dict() for check in self.checks],
            "certificates": list(self.certificates),
            "notes": list(self.notes),
            "invalid": to_jsonable(self.invalid),
        }


@dataclass
class DomainReport(LawReport):
    """Verdict on a quasi-identity: ``holds`` plus a witness when it fails."""

    quasi_identity: str = ""
    holds: bool = True
    status: str = "tested"
    witness: Any = None
    hypothesis: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.holds

    def to_dict(self):
        data = super().to_dict()
        data.update(
            {
                "property": self.quasi_identity,
                "holds": self.holds,
                "status": self.status,
                "witness": to_jsonable(self.witness),
                "hypothesis": dict(self.hypothesis),
            }
        )
        return data


@dataclass
class ConstructionReport:
    """A verdict reached by an explicit construction, with the steps that led to it."""

    instance: str
    verdict: str
    expected: str
    trace: List[Dict[str, Any]] = field(default_factory=list)
    certificates: List[str] = field(default_factory=list)
    seed: int = 0

    @property
    def passed(self) -> bool:
        return self.verdict == self.expected

    def step(self, name: str, **values):
        self.trace.append({"step": name, **values})

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "instance": self.instance,
            "seed": self.seed,
            "trace": to_jsonable(self.trace),
            "certificates": list(self.certificates),
        }


def emit_json(data) -> str:
    """Canonical JSON text: fixed field order, rationals as "p/q", no whitespace."""
    return json.dumps(to_jsonable(data), separators=(",", ":"), ensure_ascii=False)


def emit_report(report) -> str:
    return emit_json(report.to_dict())
