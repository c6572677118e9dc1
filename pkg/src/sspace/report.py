"""Small result records returned by the verification operations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass
class Report:
    """Outcome of a sampled check: verdict, worst deviation, sample count."""

    passed: bool
    max_deviation: float
    samples: int
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed


@dataclass
class NaturalityReport(Report):
    """Naturality verdict with the witness representation when one exists.

    witness_matrix is the constant representation for the plain notion; for
    the fibration notion it is a list of (fiber description, matrix) pairs.
    """

    witness_matrix: Any = None

    def witness_copy(self) -> Any:
        if isinstance(self.witness_matrix, np.ndarray):
            return self.witness_matrix.copy()
        return self.witness_matrix


def merge_reports(reports: list[Report], detail: str = "") -> Report:
    """Conjunction of sub-reports, keeping the worst deviation."""
    passed = all(r.passed for r in reports)
    max_dev = max((r.max_deviation for r in reports), default=0.0)
    n = sum(r.samples for r in reports)
    notes = [r.detail for r in reports if r.detail and not r.passed]
    if detail:
        notes.insert(0, detail)
    return Report(passed=passed, max_deviation=max_dev, samples=n, detail="; ".join(notes))
