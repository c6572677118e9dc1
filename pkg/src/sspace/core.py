"""Frame spaces over a manifold and the tensor <-> matrix-map correspondence.

A frame space bundles: a total manifold N, a submersion psi onto the base
M, a right group action preserving the fibers of psi and transitive on
them, and frame maps assigning to every z in N a basis of the tangent
space of M at psi(z).  Frames transform along fibers by a fixed group
representation (the base change), which is what makes tensor fields on M
equivalent to equivariant matrix maps on N.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .config import DEFAULT, DiffConfig
from .errors import InvarianceViolation, ResidualTooLarge
from .geometry import Manifold, PointOn, SmoothMap, Tangent, Tensor02Field, frame_components, random_point
from .groups import LieGroup, random_element
from .numerics import numerical_rank, solve_least_squares
from .report import Report

__all__ = [
    "SSpace",
    "MatrixMap",
    "BaseChange",
    "frame_rows",
    "frame_matrix",
    "act",
    "extract_base_change",
    "base_change",
    "verify_rigidity",
    "matrix_rep",
    "vector_rep",
    "rep_value_via",
    "tensor_from_matrix",
    "check_invariance",
    "stabilizer_dim",
    "dimension_identity",
    "admits_constant_rep",
    "block_structure_test",
    "random_fiber_mates",
]


@dataclass(frozen=True, eq=False)
class SSpace:
    """A frame space (N, psi, O, action, frames) over base.

    frames(z) returns base.dim ambient row vectors forming a basis of the
    tangent space of the base at psi(z).  fiber_section picks a point of N
    over a given base point.  fiber_split, when set, is the coordinate
    range of N's fiber parameter for the trivial-fibration notions (an
    empty range means the fiber is a single point).  witness_finder, when
    available, produces a group value carrying one fiber point to another.
    analytic marks instances whose frame and action formulas are exact
    (tight tolerances); the rest are checked at finite-difference accuracy.
    """

    name: str
    total: Manifold
    base: Manifold
    group: LieGroup
    psi: SmoothMap
    action: Callable[[PointOn, object], PointOn]
    frames: Callable[[PointOn], np.ndarray]
    fiber_section: Callable[[PointOn], PointOn]
    fiber_split: tuple[int, int] | None = None
    witness_finder: Callable[[PointOn, PointOn], object] | None = None
    analytic: bool = True

    @property
    def n(self) -> int:
        return self.base.dim

    def __repr__(self) -> str:
        return f"SSpace({self.name})"


@dataclass(frozen=True, eq=False)
class MatrixMap:
    """An n x n matrix-valued map on the total space of a frame space."""

    sspace: SSpace
    eval: Callable[[PointOn], np.ndarray]
    name: str = ""


@dataclass(frozen=True, eq=False)
class BaseChange:
    """The base-change representation L of a frame space, extracted at a point."""

    sspace: SSpace
    at: PointOn

    def eval(self, a_value) -> np.ndarray:
        return extract_base_change(self.sspace, a_value, self.at)


def frame_rows(s: SSpace, z: PointOn) -> np.ndarray:
    """Frame vectors at psi(z) as rows, shape (n, base ambient)."""
    rows = np.asarray(s.frames(z), dtype=float)
    if rows.shape != (s.n, s.base.ambient_dim):
        raise ResidualTooLarge(
            f"frames of {s.name} returned shape {rows.shape}, "
            f"expected {(s.n, s.base.ambient_dim)}"
        )
    return rows


def frame_matrix(s: SSpace, z: PointOn) -> np.ndarray:
    """Frame vectors stacked as columns, shape (base ambient, n)."""
    return frame_rows(s, z).T


def act(s: SSpace, z: PointOn, a_value) -> PointOn:
    out = s.action(z, a_value)
    if isinstance(out, PointOn):
        return out
    return PointOn(s.total, np.asarray(out, dtype=float))


def extract_base_change(
    s: SSpace, a_value, z: PointOn, cfg: DiffConfig = DEFAULT
) -> np.ndarray:
    """Solve frames(z . a) = frames(z) . L for L in the least-squares sense."""
    e0 = frame_matrix(s, z)
    e1 = frame_matrix(s, act(s, z, a_value))
    res = solve_least_squares(e0, e1, cfg)
    scale = max(1.0, float(np.linalg.norm(e1)))
    if res.residual > 1e-5 * scale:
        raise ResidualTooLarge(
            f"base-change fit residual {res.residual:.3e} on {s.name}"
        )
    return res.solution


def base_change(s: SSpace, z: PointOn) -> BaseChange:
    return BaseChange(sspace=s, at=z)


def random_fiber_mates(
    s: SSpace, rng: np.random.Generator, z: PointOn | None = None
) -> tuple[PointOn, PointOn, object]:
    """A pair of points on one fiber, related by a sampled group value."""
    if z is None:
        z = random_point(s.total, rng)
    a = random_element(s.group, rng).value
    return z, act(s, z, a), a


def verify_rigidity(
    s: SSpace,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
) -> Report:
    """Check the base change is point-independent and multiplicative.

    For sampled group values the extracted L must agree across total-space
    points, and L(ab) must equal L(a) L(b).
    """
    tol = cfg.tol if tol is None else tol
    worst = 0.0
    n_pairs = max(2, samples // 4)
    for _ in range(n_pairs):
        a = random_element(s.group, rng).value
        b = random_element(s.group, rng).value
        zs = [random_point(s.total, rng) for _ in range(3)]
        mats = [extract_base_change(s, a, z, cfg) for z in zs]
        for m in mats[1:]:
            worst = max(worst, float(np.linalg.norm(m - mats[0])))
        ab = s.group.mul(a, b)
        lab = extract_base_change(s, ab, zs[0], cfg)
        la, lb = mats[0], extract_base_change(s, b, zs[0], cfg)
        worst = max(worst, float(np.linalg.norm(lab - la @ lb)))
    return Report(passed=worst <= tol, max_deviation=worst, samples=n_pairs)


def matrix_rep(
    s: SSpace, t: Tensor02Field, z: PointOn, cfg: DiffConfig = DEFAULT
) -> np.ndarray:
    """Entries T(psi(z))(e_i(z), e_j(z)) with i as the row index."""
    p = s.psi.eval(z)
    rows = frame_rows(s, z)
    tangents = [Tangent(p, rows[i]) for i in range(s.n)]
    out = np.empty((s.n, s.n))
    for i in range(s.n):
        for j in range(s.n):
            out[i, j] = t.eval(p, tangents[i], tangents[j])
    return out


def vector_rep(
    s: SSpace,
    field: Callable[[PointOn], Tangent],
    z: PointOn,
    cfg: DiffConfig = DEFAULT,
) -> np.ndarray:
    """Coefficient row of a tangent-vector field in the frame at psi(z)."""
    p = s.psi.eval(z)
    return frame_components(field(p), frame_rows(s, z), cfg)


def rep_value_via(
    s: SSpace,
    f_eval: Callable[[PointOn], np.ndarray],
    z: PointOn,
    u: Tangent,
    v: Tangent,
    cfg: DiffConfig = DEFAULT,
) -> float:
    """Bilinear value reconstructed from a matrix map through the fiber point z."""
    rows = frame_rows(s, z)
    x = frame_components(u, rows, cfg)
    y = frame_components(v, rows, cfg)
    return float(x @ np.asarray(f_eval(z), dtype=float) @ y)


def check_invariance(
    s: SSpace,
    f: MatrixMap | Callable[[PointOn], np.ndarray],
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
) -> Report:
    """Check F(z . a) = L(a)^T F(z) L(a) on random points and group values."""
    tol = cfg.tol if tol is None else tol
    f_eval = f.eval if isinstance(f, MatrixMap) else f
    worst = 0.0
    for _ in range(samples):
        z, za, a = random_fiber_mates(s, rng)
        l_mat = extract_base_change(s, a, z, cfg)
        lhs = np.asarray(f_eval(za), dtype=float)
        rhs = l_mat.T @ np.asarray(f_eval(z), dtype=float) @ l_mat
        dev = float(np.linalg.norm(lhs - rhs)) / max(1.0, float(np.linalg.norm(rhs)))
        worst = max(worst, dev)
    return Report(passed=worst <= tol, max_deviation=worst, samples=samples)


def tensor_from_matrix(
    s: SSpace,
    f: MatrixMap | Callable[[PointOn], np.ndarray],
    samples: int = 40,
    rng: np.random.Generator | None = None,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
    name: str = "",
) -> Tensor02Field:
    """The tensor field on the base determined by an equivariant matrix map.

    The invariance precondition is verified on random samples first;
    InvarianceViolation is raised if it fails.  Values are computed through
    the fiber section, which is well defined exactly because of the
    invariance law.
    """
    f_eval = f.eval if isinstance(f, MatrixMap) else f
    rng = np.random.default_rng(0) if rng is None else rng
    pre = check_invariance(s, f_eval, samples, rng, cfg, tol)
    if not pre.passed:
        raise InvarianceViolation(
            f"matrix map is not equivariant (deviation {pre.max_deviation:.3e})"
        )

    def ev(p: PointOn, u: Tangent, v: Tangent) -> float:
        z = s.fiber_section(p)
        return rep_value_via(s, f_eval, z, u, v, cfg)

    return Tensor02Field(s.base, ev, name=name or "from-matrix-map")


def stabilizer_dim(s: SSpace, z: PointOn, cfg: DiffConfig = DEFAULT) -> int:
    """Dimension of the stabilizer of z, via the rank of the orbit map.

    Columns of the differential are central differences of t -> z . exp(t X)
    over the algebra basis; the stabilizer dimension is dim O minus the
    numerical rank.
    """
    g = s.group
    if g.dim == 0:
        return 0
    h = cfg.step
    cols = []
    for x in g.algebra_basis:
        plus = act(s, z, g.exp(x, h)).coords
        minus = act(s, z, g.exp(x, -h)).coords
        cols.append((plus - minus) / (2.0 * h))
    d = np.stack(cols, axis=1)
    return g.dim - numerical_rank(d, cfg)


def dimension_identity(
    s: SSpace,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
) -> Report:
    """dim N = dim M + dim O - s, with s sampled for constancy."""
    dims = set()
    for _ in range(max(1, samples)):
        z = random_point(s.total, rng)
        dims.add(stabilizer_dim(s, z, cfg))
    constant = len(dims) == 1
    stab = dims.pop() if constant else max(dims)
    expected = s.base.dim + s.group.dim - stab
    ok = constant and (s.total.dim == expected)
    detail = f"stabilizer dims {sorted(dims | {stab})}, dim N {s.total.dim} vs {expected}"
    return Report(
        passed=ok,
        max_deviation=float(abs(s.total.dim - expected)),
        samples=samples,
        detail=detail,
    )


def admits_constant_rep(
    s: SSpace,
    a: np.ndarray,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
    z: PointOn | None = None,
) -> Report:
    """Whether the constant matrix A satisfies L(g)^T A L(g) = A on samples."""
    tol = cfg.tol if tol is None else tol
    a = np.asarray(a, dtype=float)
    z = random_point(s.total, rng) if z is None else z
    worst = 0.0
    for _ in range(samples):
        g_val = random_element(s.group, rng).value
        l_mat = extract_base_change(s, g_val, z, cfg)
        worst = max(worst, float(np.linalg.norm(l_mat.T @ a @ l_mat - a)))
    return Report(passed=worst <= tol, max_deviation=worst, samples=samples)


def block_structure_test(
    s: SSpace,
    nu: int,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
) -> Report:
    """Whether sampled L(a) are block diagonal with orthogonal blocks (nu, n - nu).

    Cross-checked against the equivalent pair of constant-form conditions:
    the identity and diag(I_nu, -I_(n-nu)) must both be admitted exactly
    when the block structure holds.
    """
    tol = cfg.tol if tol is None else tol
    n = s.n
    if not 0 <= nu <= n:
        raise ValueError(f"nu must lie in [0, {n}]")
    z = random_point(s.total, rng)
    worst = 0.0
    for _ in range(samples):
        g_val = random_element(s.group, rng).value
        l_mat = extract_base_change(s, g_val, z, cfg)
        off = float(
            np.linalg.norm(l_mat[:nu, nu:]) + np.linalg.norm(l_mat[nu:, :nu])
        )
        a_block, b_block = l_mat[:nu, :nu], l_mat[nu:, nu:]
        orth = float(
            np.linalg.norm(a_block.T @ a_block - np.eye(nu))
            + np.linalg.norm(b_block.T @ b_block - np.eye(n - nu))
        )
        worst = max(worst, off, orth)
    blocks_ok = worst <= tol

    signature = np.diag(np.concatenate([np.ones(nu), -np.ones(n - nu)]))
    cross = (
        admits_constant_rep(s, np.eye(n), samples, rng, cfg, tol, z).passed
        and admits_constant_rep(s, signature, samples, rng, cfg, tol, z).passed
    )
    agree = blocks_ok == cross
    detail = "" if agree else "block test and constant-form cross-check disagree"
    return Report(
        passed=blocks_ok and agree,
        max_deviation=worst,
        samples=samples,
        detail=detail,
    )
