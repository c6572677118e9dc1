"""Dense numerical kernels: least squares, matrix exponential, differentials, rank.

All kernels operate on plain float64 ndarrays of modest size (dimensions
well under ~20); nothing here is tuned for large or sparse problems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg

from .config import DEFAULT, DiffConfig
from .errors import EvaluationFailure, RankDeficient

__all__ = [
    "LstsqResult",
    "solve_least_squares",
    "matrix_exp",
    "differential",
    "numerical_rank",
    "as_matrix",
]


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a float64 ndarray and reject non-finite entries."""
    out = np.asarray(a, dtype=float)
    if not np.all(np.isfinite(out)):
        raise EvaluationFailure(f"{name} contains non-finite entries")
    return out


@dataclass(frozen=True)
class LstsqResult:
    """Least-squares solution together with its Frobenius residual."""

    solution: np.ndarray
    residual: float
    rank: int


def solve_least_squares(a, b, cfg: DiffConfig = DEFAULT) -> LstsqResult:
    """Minimum-norm solution X of A X ~ B via SVD.

    Raises RankDeficient when A has numerical column-rank below its width,
    judged against cfg.svd_threshold relative to the largest singular value.
    """
    a = as_matrix(a, "lhs")
    b = as_matrix(b, "rhs")
    if a.ndim != 2:
        raise ValueError("lhs must be 2-dimensional")
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    cutoff = cfg.svd_threshold * (s[0] if s.size else 1.0)
    rank = int(np.sum(s > cutoff))
    if rank < a.shape[1]:
        raise RankDeficient(
            f"column rank {rank} < {a.shape[1]} (singular values {s})"
        )
    inv_s = np.where(s > cutoff, 1.0 / np.where(s > cutoff, s, 1.0), 0.0)
    x = vt.T @ (inv_s[:, None] * (u.T @ b)) if b.ndim == 2 else vt.T @ (inv_s * (u.T @ b))
    residual = float(np.linalg.norm(a @ x - b))
    return LstsqResult(solution=x, residual=residual, rank=rank)


def matrix_exp(x) -> np.ndarray:
    """Matrix exponential (scaling-and-squaring with Pade approximants)."""
    x = as_matrix(x, "exponent")
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError("exponent must be square")
    return scipy.linalg.expm(x)


def _probe(fn: Callable[[np.ndarray], np.ndarray], x: np.ndarray) -> np.ndarray:
    try:
        val = np.asarray(fn(x), dtype=float)
    except Exception as exc:  # noqa: BLE001 - wrapped into the error taxonomy
        raise EvaluationFailure(f"map rejected probe point {x!r}: {exc}") from exc
    if not np.all(np.isfinite(val)):
        raise EvaluationFailure(f"map returned non-finite values at {x!r}")
    return val.ravel()


def differential(
    fn: Callable[[np.ndarray], np.ndarray],
    x,
    cfg: DiffConfig = DEFAULT,
) -> np.ndarray:
    """Central-difference Jacobian of fn at x.

    The step is cfg.step * max(1, |x|).  If a probe fails, the step is
    shrunk once (by 8x) before giving up with EvaluationFailure.
    """
    x = as_matrix(x, "base point").ravel()
    h = cfg.step * max(1.0, float(np.linalg.norm(x)))
    for attempt in range(2):
        try:
            cols = []
            for i in range(x.size):
                e = np.zeros_like(x)
                e[i] = h
                cols.append((_probe(fn, x + e) - _probe(fn, x - e)) / (2.0 * h))
            return np.stack(cols, axis=1)
        except EvaluationFailure:
            if attempt == 1:
                raise
            h = h / 8.0
    raise AssertionError("unreachable")


def numerical_rank(a, cfg: DiffConfig = DEFAULT) -> int:
    """Number of singular values above cfg.svd_threshold * s_max."""
    a = as_matrix(a, "matrix")
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > cfg.svd_threshold * s[0]))
