"""Numerical configuration shared across modules."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class DiffConfig:
    """Tolerances and step sizes for the numerical kernels.

    step is the base finite-difference step; `differential` scales it by
    max(1, |x|).  svd_threshold is the relative singular-value cutoff used
    for rank decisions and pseudo-inverse solves.  tol is the default
    agreement tolerance for analytic identities.
    """

    step: float = 6e-6
    svd_threshold: float = 1e-8
    tol: float = 1e-7

    def __post_init__(self) -> None:
        if not (0.0 < self.step < 1e-2):
            raise ValueError(f"step must lie in (0, 1e-2), got {self.step}")
        if self.tol < 100 * _EPS:
            raise ValueError(f"tol must be >= {100 * _EPS:.3e}, got {self.tol}")
        if self.svd_threshold <= 0.0:
            raise ValueError("svd_threshold must be positive")


DEFAULT = DiffConfig()
