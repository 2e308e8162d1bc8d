"""Verification reports shared by the bijection checkers."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class VerificationReport:
    theorem: str
    instance: str
    lhs: int
    rhs: int
    passed: bool
    witness: str | None = None
    ms: float = 0.0
    seed: int | None = None

    def __post_init__(self):
        if not self.passed and not self.witness:
            self.witness = f"count mismatch {self.lhs} != {self.rhs}"

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def line(self) -> str:
        seed = "-" if self.seed is None else str(self.seed)
        out = (f"theorem={self.theorem} seed={seed} status={self.status} "
               f"lhs={self.lhs} rhs={self.rhs} ms={self.ms:.1f}")
        if not self.passed:
            out += f" witness={self.witness!r}"
        return out


def summary(reports: list[VerificationReport]) -> str:
    failed = [r for r in reports if not r.passed]
    total_ms = sum(r.ms for r in reports)
    return f"summary: {len(reports) - len(failed)}/{len(reports)} passed, {len(failed)} failed, {total_ms:.1f} ms"
