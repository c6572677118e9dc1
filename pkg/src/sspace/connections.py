"""Connections on frame spaces: vertical projectors, lifts, coframes.

A connection is encoded by its vertical projector phi_z acting on ambient
tangent vectors of the total space.  phi must be idempotent, have image
equal to the kernel of the projection differential, and commute with the
group action.  From a projector we derive horizontal lifts, the theta/W
coframes, and lifted metrics that make the projection a Riemannian
submersion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .config import DEFAULT, DiffConfig
from .core import SSpace, act, frame_matrix
from .errors import ResidualTooLarge, SplittingFailure
from .geometry import (
    Manifold,
    PointOn,
    RiemannianMetric,
    Tangent,
    Tensor02Field,
    pushforward,
    random_point,
)
from .groups import AlgebraElement, random_element
from .numerics import differential, numerical_rank, solve_least_squares
from .report import Report

__all__ = [
    "SSpaceConnection",
    "connection_from_bases",
    "vertical_space_basis",
    "verify_connection",
    "fundamental_vertical_field",
    "coframe_theta",
    "coframe_w",
    "horizontal_lift",
    "lifted_metric",
    "ConnectionFunction",
    "splitting_report",
    "connection_from_k",
    "sasaki_mok_metric",
    "global_frame_check",
    "random_total_tangent",
]


@dataclass(frozen=True, eq=False)
class SSpaceConnection:
    """Vertical projector phi(z, b) on ambient tangent vectors of the total space."""

    sspace: SSpace
    vertical_projector: Callable[[PointOn, np.ndarray], np.ndarray]
    name: str = ""

    def project(self, z: PointOn, b: np.ndarray) -> np.ndarray:
        return np.asarray(self.vertical_projector(z, np.asarray(b, dtype=float)), dtype=float)

    def horizontal_part(self, z: PointOn, b: np.ndarray) -> np.ndarray:
        b = np.asarray(b, dtype=float)
        return b - self.project(z, b)

    def __repr__(self) -> str:
        return f"SSpaceConnection({self.name or self.sspace.name})"


def vertical_space_basis(s: SSpace, z: PointOn, cfg: DiffConfig = DEFAULT) -> np.ndarray:
    """Rows spanning ker psi_* inside the tangent space at z."""
    basis = np.asarray(s.total.tangent_basis(z.coords), dtype=float)
    if s.psi.jacobian is not None:
        jac = np.asarray(s.psi.jacobian(z.coords), dtype=float)
    else:
        jac = differential(s.psi.coord_fn, z.coords, cfg)
    m = jac @ basis.T
    u, sv, vt = np.linalg.svd(m)
    if sv.size == 0:
        null = np.eye(basis.shape[0])
    else:
        keep = sv > cfg.svd_threshold * sv[0]
        rank = int(np.count_nonzero(keep))
        null = vt[rank:].T
    return (basis.T @ null).T


def connection_from_bases(
    s: SSpace,
    horizontal_basis: Callable[[PointOn], np.ndarray],
    vertical_basis: Callable[[PointOn], np.ndarray] | None = None,
    name: str = "",
    cfg: DiffConfig = DEFAULT,
) -> SSpaceConnection:
    """Build the projector from a horizontal-space basis (rows per point).

    The vertical basis defaults to the numeric kernel of psi_*.
    """

    def proj(z: PointOn, b: np.ndarray) -> np.ndarray:
        h = np.asarray(horizontal_basis(z), dtype=float)
        v = vertical_space_basis(s, z, cfg) if vertical_basis is None else np.asarray(
            vertical_basis(z), dtype=float
        )
        stacked = np.vstack([h, v]).T
        res = solve_least_squares(stacked, b, cfg)
        scale = max(1.0, float(np.linalg.norm(b)))
        if res.residual > 1e-6 * scale:
            raise ResidualTooLarge(
                f"vector is not spanned by the horizontal/vertical bases ({res.residual:.3e})"
            )
        return v.T @ res.solution[h.shape[0] :]

    return SSpaceConnection(sspace=s, vertical_projector=proj, name=name)


def random_total_tangent(s: SSpace, z: PointOn, rng: np.random.Generator) -> np.ndarray:
    basis = np.asarray(s.total.tangent_basis(z.coords), dtype=float)
    return rng.standard_normal(basis.shape[0]) @ basis


def verify_connection(
    c: SSpaceConnection,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
) -> Report:
    """Idempotence, verticality of the image, and equivariance of the projector."""
    tol = cfg.tol if tol is None else tol
    s = c.sspace
    worst = 0.0
    for _ in range(samples):
        z = random_point(s.total, rng)
        b = random_total_tangent(s, z, rng)
        scale = max(1.0, float(np.linalg.norm(b)))

        pb = c.project(z, b)
        worst = max(worst, float(np.linalg.norm(c.project(z, pb) - pb)) / scale)

        if s.psi.jacobian is not None:
            jpsi = np.asarray(s.psi.jacobian(z.coords), dtype=float)
        else:
            jpsi = differential(s.psi.coord_fn, z.coords, cfg)
        worst = max(worst, float(np.linalg.norm(jpsi @ pb)) / scale)

        a = random_element(s.group, rng).value
        za = act(s, z, a)

        def moved(x: np.ndarray, a=a) -> np.ndarray:
            return act(s, PointOn(s.total, x), a).coords

        ra = differential(moved, z.coords, cfg)
        lhs = c.project(za, ra @ b)
        rhs = ra @ pb
        worst = max(worst, float(np.linalg.norm(lhs - rhs)) / scale)
    return Report(passed=worst <= tol, max_deviation=worst, samples=samples)


def fundamental_vertical_field(
    s: SSpace, x: AlgebraElement, z: PointOn, cfg: DiffConfig = DEFAULT
) -> np.ndarray:
    """Velocity at t=0 of t -> z . exp(t x)."""
    h = cfg.step
    plus = act(s, z, s.group.exp(x.value, h)).coords
    minus = act(s, z, s.group.exp(x.value, -h)).coords
    return (plus - minus) / (2.0 * h)


def coframe_theta(
    s: SSpace, z: PointOn, b: np.ndarray, cfg: DiffConfig = DEFAULT
) -> np.ndarray:
    """Components of psi_* b in the frame at z (the soldering coframe)."""
    pushed = pushforward(s.psi, Tangent(z, np.asarray(b, dtype=float)), cfg)
    e_cols = frame_matrix(s, z)
    res = solve_least_squares(e_cols, pushed.vec, cfg)
    if res.residual > 1e-6 * max(1.0, float(np.linalg.norm(pushed.vec))):
        raise ResidualTooLarge(f"projected vector escapes the frame span ({res.residual:.3e})")
    return res.solution


def coframe_w(
    c: SSpaceConnection,
    algebra: Sequence[AlgebraElement],
    z: PointOn,
    b: np.ndarray,
    cfg: DiffConfig = DEFAULT,
) -> np.ndarray:
    """Components of the vertical part of b in the fundamental fields of algebra."""
    vert = c.project(z, b)
    cols = np.column_stack(
        [fundamental_vertical_field(c.sspace, x, z, cfg) for x in algebra]
    )
    res = solve_least_squares(cols, vert, cfg)
    if res.residual > 1e-5 * max(1.0, float(np.linalg.norm(vert))):
        raise ResidualTooLarge(
            f"vertical part escapes the fundamental fields ({res.residual:.3e})"
        )
    return res.solution


def horizontal_lift(
    c: SSpaceConnection, v: Tangent, z: PointOn, cfg: DiffConfig = DEFAULT
) -> Tangent:
    """The horizontal vector at z projecting onto v."""
    s = c.sspace
    basis = np.asarray(s.total.tangent_basis(z.coords), dtype=float)
    h_rows = np.array([c.horizontal_part(z, row) for row in basis])
    # the projected rows span the horizontal space redundantly; reduce to
    # an orthonormal basis before solving
    _, sv, vt = np.linalg.svd(h_rows, full_matrices=False)
    keep = sv > cfg.svd_threshold * max(1.0, float(sv[0]) if sv.size else 1.0)
    h_basis = vt[: int(np.count_nonzero(keep))]
    if s.psi.jacobian is not None:
        jac = np.asarray(s.psi.jacobian(z.coords), dtype=float)
    else:
        jac = differential(s.psi.coord_fn, z.coords, cfg)
    m = jac @ h_basis.T
    res = solve_least_squares(m, v.vec, cfg)
    lift = h_basis.T @ res.solution
    check = float(np.linalg.norm(jac @ lift - v.vec))
    if check > 1e-5 * max(1.0, float(np.linalg.norm(v.vec))):
        raise ResidualTooLarge(f"lift misses the target vector by {check:.3e}")
    return Tangent(z, lift)


def lifted_metric(
    c: SSpaceConnection,
    g: Tensor02Field,
    algebra: Sequence[AlgebraElement],
    cfg: DiffConfig = DEFAULT,
    name: str = "",
) -> Tensor02Field:
    """psi^* g plus the sum of squares of the W coframe.

    Riemannian when g is; the projection becomes a Riemannian submersion
    with totally geodesic-independent vertical term weights all one.
    """
    s = c.sspace

    def eval_fn(z: PointOn, ta: Tangent, tb: Tangent) -> float:
        p = s.psi.eval(z)
        ja = pushforward(s.psi, ta, cfg)
        jb = pushforward(s.psi, tb, cfg)
        val = g.eval(p, ja, jb)
        wa = coframe_w(c, algebra, z, ta.vec, cfg)
        wb = coframe_w(c, algebra, z, tb.vec, cfg)
        return float(val + wa @ wb)

    cls = RiemannianMetric if isinstance(g, RiemannianMetric) else Tensor02Field
    return cls(
        manifold=s.total,
        eval=eval_fn,
        name=name or f"lifted({g.name})",
        symmetric=g.symmetric,
    )


@dataclass(frozen=True, eq=False)
class ConnectionFunction:
    """Connection map K on the tangent bundle of the base, in ambient charts.

    tangent coordinates are concat(point, vector); eval takes such a
    coordinate vector together with a velocity of the same length and
    returns the covariant-derivative value, an ambient vector of base.
    """

    base: Manifold
    eval: Callable[[np.ndarray, np.ndarray], np.ndarray]
    name: str = ""

    def frame_curve(self, s: SSpace, i: int) -> Callable[[np.ndarray], np.ndarray]:
        """z-coordinates -> tangent-bundle coordinates of the i-th frame vector."""

        def fn(x: np.ndarray) -> np.ndarray:
            pt = PointOn(s.total, np.asarray(x, dtype=float))
            rows = np.asarray(s.frames(pt), dtype=float)
            return np.concatenate([np.asarray(s.psi.coord_fn(x), dtype=float), rows[i]])

        return fn

    def applied_to_frame(
        self, s: SSpace, i: int, z: PointOn, b: np.ndarray, cfg: DiffConfig = DEFAULT
    ) -> np.ndarray:
        """K composed with the differential of the i-th frame map, applied to b."""
        curve = self.frame_curve(s, i)
        jac = differential(curve, z.coords, cfg)
        return np.asarray(self.eval(curve(z.coords), jac @ np.asarray(b, dtype=float)), dtype=float)


def _splitting_data(
    s: SSpace, k: ConnectionFunction, z: PointOn, cfg: DiffConfig
) -> dict:
    basis = np.asarray(s.total.tangent_basis(z.coords), dtype=float)
    dim_n = basis.shape[0]
    amb_m = s.base.ambient_dim

    k_rows = []
    for i in range(s.n):
        curve = k.frame_curve(s, i)
        jac = differential(curve, z.coords, cfg)
        tm_coords = curve(z.coords)
        block = np.column_stack(
            [np.asarray(k.eval(tm_coords, jac @ row), dtype=float) for row in basis]
        )
        k_rows.append(block)
    kmat = np.vstack(k_rows)

    u, sv, vt = np.linalg.svd(kmat)
    if sv.size == 0:
        null = np.eye(dim_n)
    else:
        keep = sv > cfg.svd_threshold * max(sv[0], 1.0)
        null = vt[int(np.count_nonzero(keep)) :].T
    h_coeff = null

    if s.psi.jacobian is not None:
        jpsi = np.asarray(s.psi.jacobian(z.coords), dtype=float)
    else:
        jpsi = differential(s.psi.coord_fn, z.coords, cfg)
    push_block = jpsi @ basis.T
    f_mat = np.vstack([push_block, kmat])

    injective = numerical_rank(f_mat, cfg) == dim_n
    image_ok = True
    p = s.psi.eval(z)
    for w in np.asarray(s.base.tangent_basis(p.coords), dtype=float):
        target = np.concatenate([w, np.zeros(kmat.shape[0])])
        # plain lstsq: the image test must measure the residual even when
        # the combined map drops rank
        coeff, *_ = np.linalg.lstsq(f_mat, target, rcond=None)
        gap = float(np.linalg.norm(f_mat @ coeff - target))
        if gap > 1e-6 * max(1.0, float(np.linalg.norm(w))):
            image_ok = False
            break

    v_rows = vertical_space_basis(s, z, cfg)
    v_res = solve_least_squares(basis.T, v_rows.T, cfg)
    v_coeff = v_res.solution
    combined = np.column_stack([h_coeff, v_coeff])
    split_ok = (
        h_coeff.shape[1] == s.n
        and combined.shape[1] == dim_n
        and numerical_rank(combined, cfg) == dim_n
    )

    return {
        "injective": injective,
        "image_ok": image_ok,
        "split_ok": split_ok,
        "horizontal_dim": int(h_coeff.shape[1]),
        "agrees": (injective and image_ok) == split_ok,
        "h_coeff": h_coeff,
        "basis": basis,
        "v_rows": v_rows,
    }


def splitting_report(
    s: SSpace, k: ConnectionFunction, z: PointOn, cfg: DiffConfig = DEFAULT
) -> dict:
    """Diagnostics of the horizontal-splitting criterion at z.

    Returns the outcome of the injectivity/image test and of the direct
    complement test; both must agree, and the connection exists iff they
    hold.
    """
    data = _splitting_data(s, k, z, cfg)
    return {key: data[key] for key in ("injective", "image_ok", "split_ok", "horizontal_dim", "agrees")}


def connection_from_k(
    s: SSpace, k: ConnectionFunction, cfg: DiffConfig = DEFAULT, name: str = "", probes: Sequence[PointOn] = (),
) -> SSpaceConnection:
    """Connection whose horizontal space is the joint kernel of the frame derivatives.

    Raises SplittingFailure when the kernel fails to complement the
    vertical space, or when the two equivalent formulations of the
    criterion disagree numerically.
    """
    for z in probes:
        data = _splitting_data(s, k, z, cfg)
        if not data["agrees"]:
            raise SplittingFailure(
                "splitting diagnostics disagree: injective/image "
                f"({data['injective']}, {data['image_ok']}) vs direct test {data['split_ok']}"
            )
        if not data["split_ok"]:
            raise SplittingFailure(
                f"kernel of the frame derivatives (dim {data['horizontal_dim']}) does not "
                "complement the vertical space"
            )

    def proj(z: PointOn, b: np.ndarray) -> np.ndarray:
        data = _splitting_data(s, k, z, cfg)
        if not (data["split_ok"] and data["agrees"]):
            raise SplittingFailure(f"no horizontal complement at {z.coords}")
        h_rows = (data["basis"].T @ data["h_coeff"]).T
        v_rows = data["v_rows"]
        stacked = np.vstack([h_rows, v_rows]).T
        res = solve_least_squares(stacked, b, cfg)
        return v_rows.T @ res.solution[h_rows.shape[0] :]

    return SSpaceConnection(sspace=s, vertical_projector=proj, name=name or f"kernel({k.name})")


def sasaki_mok_metric(
    s: SSpace,
    k: ConnectionFunction,
    g: Tensor02Field,
    weight_base: Callable[[PointOn], float],
    weight_fibers: Sequence[Callable[[PointOn], float]],
    cfg: DiffConfig = DEFAULT,
    name: str = "",
) -> Tensor02Field:
    """c(z) g(psi_* a, psi_* b) + sum_i l_i(z) g(K^i a, K^i b) on the total space.

    Generalizes the Sasaki and Mok bundle metrics; positive weights and a
    splitting connection map make it Riemannian.
    """
    if len(weight_fibers) != s.n:
        raise ValueError("one fiber weight per frame index is required")

    def eval_fn(z: PointOn, ta: Tangent, tb: Tangent) -> float:
        p = s.psi.eval(z)
        ja = pushforward(s.psi, ta, cfg)
        jb = pushforward(s.psi, tb, cfg)
        val = weight_base(z) * g.eval(p, ja, jb)
        for i in range(s.n):
            ka = k.applied_to_frame(s, i, z, ta.vec, cfg)
            kb = k.applied_to_frame(s, i, z, tb.vec, cfg)
            val += weight_fibers[i](z) * g.eval(p, Tangent(p, ka), Tangent(p, kb))
        return float(val)

    return Tensor02Field(manifold=s.total, eval=eval_fn, name=name or "bundle-metric", symmetric=g.symmetric)


def global_frame_check(
    c: SSpaceConnection,
    algebra: Sequence[AlgebraElement],
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
) -> Report:
    """Lifted frames plus fundamental fields form a global frame of the total space."""
    s = c.sspace
    expected = s.total.dim
    ok = True
    worst = 0.0
    for _ in range(samples):
        z = random_point(s.total, rng)
        p = s.psi.eval(z)
        rows = []
        for e_row in np.asarray(s.frames(z), dtype=float):
            rows.append(horizontal_lift(c, Tangent(p, e_row), z, cfg).vec)
        for x in algebra:
            rows.append(fundamental_vertical_field(s, x, z, cfg))
        mat = np.array(rows)
        rank = numerical_rank(mat, cfg)
        if rank != expected or mat.shape[0] != expected:
            ok = False
            worst = max(worst, float(expected - rank))
    return Report(passed=ok, max_deviation=worst, samples=samples,
                  detail="" if ok else "lifted frame drops rank or has wrong size")
