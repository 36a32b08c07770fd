"""Verification reports: named exact residuals with pass flags."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .scalars import format_scalar


@dataclass(frozen=True)
class Check:
    """One residual check; ``passed`` iff the residual is exactly zero.

    Solver-only entries may carry a float residual together with an explicit
    ``passed`` flag decided against a tolerance.
    """

    name: str
    residual: object
    passed: bool
    detail: str | None = None

    @classmethod
    def exact(cls, name: str, residual, detail: str | None = None) -> Check:
        return cls(name, residual, residual == 0, detail)

    def residual_json(self):
        if isinstance(self.residual, float):
            return self.residual
        return format_scalar(self.residual)

    def to_dict(self) -> dict:
        out = {"name": self.name, "residual": self.residual_json(), "pass": self.passed}
        if self.detail is not None:
            out["detail"] = self.detail
        return out

    def __bool__(self):
        return self.passed


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks: Iterable[Check]) -> None:
        self.checks.extend(checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"checks": [c.to_dict() for c in self.checks], "overall": self.passed}

    def format_table(self) -> str:
        width = max((len(c.name) for c in self.checks), default=5)
        lines = [f"{'check':<{width}}  {'residual':>14}  result"]
        for c in self.checks:
            lines.append(
                f"{c.name:<{width}}  {str(c.residual_json()):>14}  {'PASS' if c.passed else 'FAIL'}"
            )
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


class ResidualError(ValueError):
    """An operation's precondition failed; ``residual`` says by how much."""

    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual
