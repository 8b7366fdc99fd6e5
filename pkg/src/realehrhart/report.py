from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    """Outcome of a batch of exact identity checks."""

    name: str
    checked: int = 0
    failed: int = 0
    counterexample: dict[str, Any] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def record(self, ok: bool, **context) -> bool:
        self.checked += 1
        if not ok:
            self.failed += 1
            if self.counterexample is None:
                self.counterexample = {k: str(v) for k, v in context.items()}
        return ok

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.checked += other.checked
        self.failed += other.failed
        if self.counterexample is None:
            self.counterexample = other.counterexample
        self.notes.extend(other.notes)
        return self

    def __bool__(self) -> bool:
        return self.passed

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name}: {self.checked - self.failed}/{self.checked} checks"
        if self.counterexample:
            line += f"; first counterexample {self.counterexample}"
        return line
