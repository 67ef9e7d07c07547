"""Machine-readable results of exact checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exactlin import FpElement


def jsonable(obj: Any) -> Any:
    """Convert exact scalars to ``p/q`` strings and containers to JSON types."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (Fraction, FpElement)):
        return str(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


@dataclass
class Report:
    """Outcome of a check; ``witness`` is set exactly when the check failed."""

    passed: bool
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.passed and self.witness is not None:
            raise ValueError("a passing report carries no witness")
        if not self.passed and self.witness is None:
            raise ValueError("a failing report needs a witness")

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        out = {"passed": self.passed, "witness": jsonable(self.witness)}
        if self.details:
            out["details"] = jsonable(self.details)
        return out
