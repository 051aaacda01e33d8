from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Violation:
    """A failed check: which property, where, and the two sides compared."""

    kind: str
    where: tuple = ()
    lhs: Any = None
    rhs: Any = None
    detail: str = ""
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def plain(v):
            if isinstance(v, tuple):
                return [plain(x) for x in v]
            if isinstance(v, list):
                return [plain(x) for x in v]
            if hasattr(v, "tolist"):
                return v.tolist()
            return v

        return {"kind": self.kind, "where": plain(self.where), "lhs": plain(self.lhs),
                "rhs": plain(self.rhs), "detail": self.detail}

    def __str__(self) -> str:
        msg = f"{self.kind} fails at {self.where}"
        if self.lhs is not None or self.rhs is not None:
            msg += f": {self.lhs} != {self.rhs}"
        if self.detail:
            msg += f" ({self.detail})"
        return msg


class VerificationError(ValueError):
    def __init__(self, violation: Violation):
        super().__init__(str(violation))
        self.violation = violation


class BudgetExceeded(RuntimeError):
    pass
