"""Embedded manifolds, tangent vectors, smooth maps, and (0,2) tensor fields.

Every manifold is realized as a subset of some ambient R^m: points are
ambient coordinate vectors, tangent vectors are ambient vectors lying in
the tangent plane, and smooth maps are callables on ambient coordinates
defined on a neighborhood of the manifold (so finite differencing may
probe slightly off it).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .config import DEFAULT, DiffConfig
from .errors import RankDeficient, ResidualTooLarge, TangencyViolation
from .numerics import differential, solve_least_squares
from .report import Report

__all__ = [
    "Manifold",
    "PointOn",
    "Tangent",
    "SmoothMap",
    "Tensor02Field",
    "RiemannianMetric",
    "pushforward",
    "frame_components",
    "check_bilinearity",
    "project_to_tangent",
    "random_point",
    "random_tangent",
    "euclidean",
    "sphere",
    "product_manifold",
    "identity_map",
    "constant_matrix_tensor",
    "polynomial_tensor",
    "ambient_dot_metric",
    "scale_tensor",
]


@dataclass(frozen=True)
class Manifold:
    """An embedded manifold of dimension dim inside R^ambient_dim.

    contains(coords, tol) decides membership, tangent_basis(coords) returns
    dim linearly independent ambient row vectors spanning the tangent
    space, and sampler(rng) draws a random point.  parts records the
    coordinate ranges of the factors when the manifold is a product.
    """

    name: str
    dim: int
    ambient_dim: int
    contains: Callable[[np.ndarray, float], bool]
    tangent_basis: Callable[[np.ndarray], np.ndarray]
    sampler: Callable[[np.random.Generator], np.ndarray]
    parts: tuple[tuple[int, int], ...] = ()

    def __repr__(self) -> str:  # keep reprs short in reports
        return f"Manifold({self.name}, dim={self.dim}, ambient={self.ambient_dim})"


@dataclass(frozen=True, eq=False)
class PointOn:
    """A point of a manifold, stored as ambient coordinates."""

    manifold: Manifold
    coords: np.ndarray

    def __repr__(self) -> str:
        return f"PointOn({self.manifold.name}, {np.round(self.coords, 4)})"


@dataclass(frozen=True, eq=False)
class Tangent:
    """A tangent vector at base, stored as an ambient vector."""

    base: PointOn
    vec: np.ndarray


@dataclass(frozen=True, eq=False)
class SmoothMap:
    """A smooth map between manifolds given by an ambient coordinate formula.

    coord_fn must accept ambient vectors near the source manifold; jacobian,
    when provided, overrides finite differencing in pushforward.
    """

    source: Manifold
    target: Manifold
    coord_fn: Callable[[np.ndarray], np.ndarray]
    jacobian: Callable[[np.ndarray], np.ndarray] | None = None
    name: str = ""

    def eval(self, p: PointOn) -> PointOn:
        return PointOn(self.target, np.asarray(self.coord_fn(p.coords), dtype=float))

    def __call__(self, p: PointOn) -> PointOn:
        return self.eval(p)


@dataclass(frozen=True, eq=False)
class Tensor02Field:
    """A field of bilinear forms: eval(point, u, v) -> float."""

    manifold: Manifold
    eval: Callable[[PointOn, Tangent, Tangent], float]
    name: str = ""
    symmetric: bool = False


@dataclass(frozen=True, eq=False)
class RiemannianMetric(Tensor02Field):
    """A symmetric positive-definite tensor field."""

    symmetric: bool = True
    positive_definite: bool = True


def project_to_tangent(
    m: Manifold, coords: np.ndarray, vec: np.ndarray, cfg: DiffConfig = DEFAULT
) -> tuple[np.ndarray, float]:
    """Orthogonal projection of vec onto the tangent space at coords.

    Returns (projection, residual norm).
    """
    basis = np.asarray(m.tangent_basis(coords), dtype=float)
    if basis.shape != (m.dim, m.ambient_dim):
        raise RankDeficient(
            f"tangent basis of {m.name} has shape {basis.shape}, "
            f"expected {(m.dim, m.ambient_dim)}"
        )
    res = solve_least_squares(basis.T, vec, cfg)
    proj = basis.T @ res.solution
    return proj, float(np.linalg.norm(vec - proj))


def random_point(m: Manifold, rng: np.random.Generator) -> PointOn:
    return PointOn(m, np.asarray(m.sampler(rng), dtype=float))


def random_tangent(
    p: PointOn, rng: np.random.Generator, scale: float = 1.0
) -> Tangent:
    """A random tangent vector with coefficients drawn from N(0, scale)."""
    basis = np.asarray(p.manifold.tangent_basis(p.coords), dtype=float)
    coeffs = rng.normal(0.0, scale, size=basis.shape[0])
    return Tangent(p, basis.T @ coeffs)


def pushforward(f: SmoothMap, v: Tangent, cfg: DiffConfig = DEFAULT) -> Tangent:
    """Differential of f applied to v, re-projected onto the target tangent space.

    Raises TangencyViolation when the projection residual exceeds
    100 * cfg.tol relative to the vector size.
    """
    x = v.base.coords
    jac = f.jacobian(x) if f.jacobian is not None else differential(f.coord_fn, x, cfg)
    raw = np.asarray(jac, dtype=float) @ v.vec
    q = f.eval(v.base)
    proj, resid = project_to_tangent(f.target, q.coords, raw, cfg)
    if resid > 100.0 * cfg.tol * max(1.0, float(np.linalg.norm(raw))):
        raise TangencyViolation(
            f"pushforward by {f.name or 'map'} left residual {resid:.3e}"
        )
    return Tangent(q, proj)


def frame_components(
    v: Tangent, frame: np.ndarray, cfg: DiffConfig = DEFAULT
) -> np.ndarray:
    """Coefficients of v in a frame given as rows of ambient vectors.

    Raises RankDeficient for a degenerate frame and ResidualTooLarge when v
    is not in the span within cfg.tol (relative).
    """
    frame = np.asarray(frame, dtype=float)
    res = solve_least_squares(frame.T, v.vec, cfg)
    scale = max(1.0, float(np.linalg.norm(v.vec)))
    if res.residual > cfg.tol * scale:
        raise ResidualTooLarge(
            f"vector lies {res.residual:.3e} outside the frame span"
        )
    return res.solution


def check_bilinearity(
    t: Tensor02Field,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
) -> Report:
    """Randomized bilinearity check in both slots."""
    m = t.manifold
    worst = 0.0
    for _ in range(samples):
        p = random_point(m, rng)
        u, v, w = (random_tangent(p, rng) for _ in range(3))
        a, b = rng.normal(size=2)
        combo = Tangent(p, a * u.vec + b * w.vec)
        left = t.eval(p, combo, v) - a * t.eval(p, u, v) - b * t.eval(p, w, v)
        right = t.eval(p, v, combo) - a * t.eval(p, v, u) - b * t.eval(p, v, w)
        worst = max(worst, abs(left), abs(right))
    return Report(passed=worst <= 1000 * cfg.tol, max_deviation=worst, samples=samples)


# ---------------------------------------------------------------------------
# Manifold constructors


def euclidean(n: int, name: str | None = None, scale: float = 2.0) -> Manifold:
    """R^n with the identity chart."""
    eye = np.eye(n)
    return Manifold(
        name=name or f"R^{n}",
        dim=n,
        ambient_dim=n,
        contains=lambda x, tol=1e-6: bool(np.all(np.isfinite(x))) and x.size == n,
        tangent_basis=lambda x: eye,
        sampler=lambda rng: rng.normal(0.0, scale, size=n),
    )


def sphere(d: int, name: str | None = None) -> Manifold:
    """The unit d-sphere in R^(d+1)."""
    amb = d + 1

    def contains(x: np.ndarray, tol: float = 1e-6) -> bool:
        return abs(float(np.linalg.norm(x)) - 1.0) <= tol

    def tangent_basis(x: np.ndarray) -> np.ndarray:
        p = x / np.linalg.norm(x)
        proj = np.eye(amb) - np.outer(p, p)
        # rows: the d singular vectors orthogonal to p
        u, s, vt = np.linalg.svd(proj)
        return vt[:d]

    def sampler(rng: np.random.Generator) -> np.ndarray:
        v = rng.normal(size=amb)
        return v / np.linalg.norm(v)

    return Manifold(name or f"S^{d}", d, amb, contains, tangent_basis, sampler)


def product_manifold(factors: Sequence[Manifold], name: str | None = None) -> Manifold:
    """Product of embedded manifolds with concatenated coordinates."""
    offsets = []
    start = 0
    for f in factors:
        offsets.append((start, start + f.ambient_dim))
        start += f.ambient_dim
    amb = start
    dim = sum(f.dim for f in factors)

    def contains(x: np.ndarray, tol: float = 1e-6) -> bool:
        return all(
            f.contains(x[a:b], tol) for f, (a, b) in zip(factors, offsets)
        )

    def tangent_basis(x: np.ndarray) -> np.ndarray:
        rows = np.zeros((dim, amb))
        r = 0
        for f, (a, b) in zip(factors, offsets):
            block = np.asarray(f.tangent_basis(x[a:b]), dtype=float)
            rows[r : r + f.dim, a:b] = block
            r += f.dim
        return rows

    def sampler(rng: np.random.Generator) -> np.ndarray:
        return np.concatenate([np.asarray(f.sampler(rng), dtype=float) for f in factors])

    return Manifold(
        name or " x ".join(f.name for f in factors),
        dim,
        amb,
        contains,
        tangent_basis,
        sampler,
        parts=tuple(offsets),
    )


def identity_map(m: Manifold) -> SmoothMap:
    return SmoothMap(m, m, lambda x: x, jacobian=lambda x: np.eye(m.ambient_dim), name="id")


# ---------------------------------------------------------------------------
# Tensor field constructors


def constant_matrix_tensor(m: Manifold, a: np.ndarray, name: str = "") -> Tensor02Field:
    """The field (u, v) -> u^T A v in ambient coordinates."""
    a = np.asarray(a, dtype=float)

    def ev(p: PointOn, u: Tangent, v: Tangent) -> float:
        return float(u.vec @ a @ v.vec)

    return Tensor02Field(m, ev, name=name or "constant-form", symmetric=bool(np.allclose(a, a.T)))


def polynomial_tensor(m: Manifold, seed: int, degree: int = 1, scale: float = 0.5) -> Tensor02Field:
    """A deterministic pseudo-random tensor with polynomial coefficients.

    The coefficient matrix is A0 + sum_l x_l * A_l (+ quadratic terms when
    degree is 2), built from a fixed seed so tests are reproducible.
    """
    rng = np.random.default_rng(seed)
    amb = m.ambient_dim
    a0 = rng.normal(0.0, 1.0, size=(amb, amb))
    lin = rng.normal(0.0, scale, size=(amb, amb, amb))
    quad = rng.normal(0.0, scale / 4, size=(amb, amb, amb)) if degree >= 2 else None

    def coeff(x: np.ndarray) -> np.ndarray:
        a = a0 + np.tensordot(x, lin, axes=(0, 0))
        if quad is not None:
            a = a + np.tensordot(x * x, quad, axes=(0, 0))
        return a

    def ev(p: PointOn, u: Tangent, v: Tangent) -> float:
        return float(u.vec @ coeff(p.coords) @ v.vec)

    return Tensor02Field(m, ev, name=f"poly-tensor-{seed}")


def ambient_dot_metric(m: Manifold, name: str = "") -> RiemannianMetric:
    """Restriction of the ambient dot product (round metric on spheres)."""

    def ev(p: PointOn, u: Tangent, v: Tangent) -> float:
        return float(u.vec @ v.vec)

    return RiemannianMetric(m, ev, name=name or "ambient-dot")


def scale_tensor(
    t: Tensor02Field, factor: Callable[[np.ndarray], float], name: str = ""
) -> Tensor02Field:
    """Pointwise scaling f(p) * T."""

    def ev(p: PointOn, u: Tangent, v: Tangent) -> float:
        return float(factor(p.coords)) * t.eval(p, u, v)

    return Tensor02Field(t.manifold, ev, name=name or f"scaled-{t.name}", symmetric=t.symmetric)
