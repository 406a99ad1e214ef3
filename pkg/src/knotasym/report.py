"""Pass/fail records shared by the verification routines and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class IdentityError(AssertionError):
    """An exact identity that must hold did not."""


@dataclass
class Check:
    identity: str
    status: bool
    witness: Any = None

    def as_dict(self) -> dict:
        return {"identity": self.identity, "status": "pass" if self.status else "fail",
                "witness": self.witness}


@dataclass
class Report:
    name: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: Report) -> None:
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)

    @property
    def ok(self) -> bool:
        return all(c.status for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.status]

    def as_dicts(self) -> list[dict]:
        return [c.as_dict() for c in self.checks]
