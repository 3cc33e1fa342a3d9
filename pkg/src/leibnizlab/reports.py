"""Structured pass/fail reports for inequality and identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """One checked inequality: lhs <= rhs + tolerance.

    ``slack`` is rhs - lhs, so ``passed`` holds iff ``slack >= -tolerance``.
    Identity checks report their maximal absolute deviation as ``lhs`` with
    ``rhs = 0``.  ``instance`` echoes the full inputs so any failure can be
    replayed from the serialized report alone.
    """

    name: str
    lhs: float
    rhs: float
    slack: float
    passed: bool
    tolerance: float
    instance: dict = field(default_factory=dict)
    seed: int | None = None

    @classmethod
    def from_values(
        cls,
        name: str,
        lhs: float,
        rhs: float,
        tolerance: float,
        instance: dict | None = None,
        seed: int | None = None,
    ) -> "VerificationReport":
        lhs = float(lhs)
        rhs = float(rhs)
        slack = rhs - lhs
        return cls(
            name=name,
            lhs=lhs,
            rhs=rhs,
            slack=slack,
            passed=bool(slack >= -tolerance),
            tolerance=float(tolerance),
            instance=dict(instance or {}),
            seed=seed,
        )

    @property
    def violation(self) -> float:
        """lhs - rhs; positive means the inequality is violated."""
        return -self.slack

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "pass": self.passed,
            "tolerance": self.tolerance,
            "instance": self.instance,
            "seed": self.seed,
        }

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] {self.name}: lhs={self.lhs:.12g} rhs={self.rhs:.12g} slack={self.slack:.3g}"
