"""Verification reports shared by every property suite."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence


def max_norm(v: Sequence[float]) -> float:
    return max(abs(x) for x in v)


def deviation(lhs: Sequence[float], rhs: Sequence[float]) -> float:
    """Relative-absolute gap max|l-r|/(1+max|r|); states grow quadratically
    in the worked examples, so a plain absolute gap would over-weight them."""
    gap = max(abs(a - b) for a, b in zip(lhs, rhs))
    return gap / (1.0 + max_norm(rhs))


@dataclass
class Witness:
    point: tuple[float, ...]
    values: tuple[float, ...] = ()
    note: str = ""

    def to_dict(self) -> dict:
        return {"point": list(self.point), "values": list(self.values), "note": self.note}


@dataclass
class VerificationReport:
    """Outcome of one property suite over a sampling grid.

    max_deviation is already normalized (see `deviation`), so the invariant
    passed == (max_deviation <= tolerance) holds literally; `inconclusive`
    flags runs where too many grid points had to be skipped.
    """

    suite: str
    passed: bool
    max_deviation: float
    tolerance: float
    grid: str = ""
    witnesses: list[Witness] = field(default_factory=list)
    checked: int = 0
    skipped: int = 0
    inconclusive: bool = False
    notes: tuple[str, ...] = ()

    @classmethod
    def from_deviations(
        cls,
        suite: str,
        deviations: Sequence[float],
        tolerance: float,
        grid: str = "",
        witnesses: list[Witness] | None = None,
        skipped: int = 0,
        inconclusive: bool = False,
        notes: tuple[str, ...] = (),
    ) -> "VerificationReport":
        dev = max(deviations) if deviations else 0.0
        return cls(
            suite=suite,
            passed=dev <= tolerance and not inconclusive,
            max_deviation=dev,
            tolerance=tolerance,
            grid=grid,
            witnesses=witnesses or [],
            checked=len(deviations),
            skipped=skipped,
            inconclusive=inconclusive,
            notes=notes,
        )

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "grid": self.grid,
            "checked": self.checked,
            "skipped": self.skipped,
            "inconclusive": self.inconclusive,
            "notes": list(self.notes),
            "witnesses": [w.to_dict() for w in self.witnesses],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def one_line(self) -> str:
        status = "PASS" if self.passed else ("INCONCLUSIVE" if self.inconclusive else "FAIL")
        return (
            f"{status:12s} {self.suite}: max dev {self.max_deviation:.3e} "
            f"(tol {self.tolerance:.1e}, {self.checked} checked, {self.skipped} skipped)"
        )
