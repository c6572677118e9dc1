"""Structure-preserving maps between frame spaces.

A morphism is a pair (f, tau): f maps total spaces, tau maps groups, the
base projections commute (possibly over a map h of bases), and f is
equivariant.  When both spaces sit over the same base, comparing frames
through f yields the linking map C(z), which controls pullbacks of
matrix representations and the invariance notions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .config import DEFAULT, DiffConfig
from .core import SSpace, act, extract_base_change, frame_matrix, matrix_rep
from .errors import NotATensor, RankDeficient, ResidualTooLarge, Singular
from .geometry import PointOn, SmoothMap, Tangent, Tensor02Field, pushforward, random_point
from .groups import random_element
from .numerics import differential, numerical_rank, solve_least_squares
from .report import Report

__all__ = [
    "SSpaceMorphism",
    "verify_morphism",
    "linking_map",
    "pullback_matrix",
    "comes_from_tensor",
    "is_invariant_tensor",
    "invariance_group_member",
    "conjugate_by_base_change",
    "iterate_pullback",
    "over_map",
    "is_subsspace",
]


@dataclass(frozen=True, eq=False)
class SSpaceMorphism:
    """(f, tau) from source to target, over an optional base map.

    over is None when both frame spaces share the same base and the
    morphism covers the identity; otherwise it is the base map h with
    psi_target(f(z)) = h(psi_source(z)).
    """

    source: SSpace
    target: SSpace
    f: SmoothMap
    tau: Callable
    over: SmoothMap | None = None
    name: str = ""

    @property
    def over_identity(self) -> bool:
        return self.over is None

    def __repr__(self) -> str:
        return f"SSpaceMorphism({self.name or self.source.name + '->' + self.target.name})"


def verify_morphism(
    m: SSpaceMorphism,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
) -> Report:
    """Check base compatibility, equivariance of f, and multiplicativity of tau."""
    tol = cfg.tol if tol is None else tol
    src, tgt = m.source, m.target
    worst = 0.0
    for _ in range(samples):
        z = random_point(src.total, rng)
        a = random_element(src.group, rng).value
        b = random_element(src.group, rng).value

        base_src = src.psi.eval(z).coords
        expected_base = base_src if m.over_identity else m.over.coord_fn(base_src)
        fz = m.f.eval(z)
        worst = max(
            worst,
            float(np.linalg.norm(tgt.psi.eval(fz).coords - np.asarray(expected_base))),
        )

        lhs = m.f.eval(act(src, z, a)).coords
        rhs = act(tgt, fz, m.tau(a)).coords
        worst = max(worst, float(np.linalg.norm(lhs - rhs)))

        tau_ab = tgt.group.flatten(m.tau(src.group.mul(a, b)))
        tau_a_tau_b = tgt.group.flatten(tgt.group.mul(m.tau(a), m.tau(b)))
        worst = max(worst, float(np.linalg.norm(tau_ab - tau_a_tau_b)))
    return Report(passed=worst <= tol, max_deviation=worst, samples=samples)


def linking_map(m: SSpaceMorphism, z: PointOn, cfg: DiffConfig = DEFAULT) -> np.ndarray:
    """C(z) with frames_target(f(z)) = frames_source(z) . C(z).

    Only defined for morphisms over the identity of a shared base.
    """
    if not m.over_identity:
        raise ValueError("linking map needs a morphism over the identity")
    e_src = frame_matrix(m.source, z)
    e_tgt = frame_matrix(m.target, m.f.eval(z))
    res = solve_least_squares(e_src, e_tgt, cfg)
    scale = max(1.0, float(np.linalg.norm(e_tgt)))
    if res.residual > 1e-5 * scale:
        raise ResidualTooLarge(f"linking fit residual {res.residual:.3e}")
    return res.solution


def pullback_matrix(
    m: SSpaceMorphism,
    t: Tensor02Field,
    z: PointOn,
    cfg: DiffConfig = DEFAULT,
) -> np.ndarray:
    """The target representation at f(z), verified against C(z)^T rep C(z)."""
    direct = matrix_rep(m.target, t, m.f.eval(z), cfg)
    c = linking_map(m, z, cfg)
    via_link = c.T @ matrix_rep(m.source, t, z, cfg) @ c
    dev = float(np.linalg.norm(direct - via_link))
    if dev > 1e-4 * max(1.0, float(np.linalg.norm(direct))):
        raise ResidualTooLarge(
            f"pullback law violated by {dev:.3e}; the input is not a tensor "
            "field or the morphism is broken"
        )
    return direct


def comes_from_tensor(
    m: SSpaceMorphism,
    t: Tensor02Field,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
) -> Report:
    """Whether the pulled-back representation is again equivariant for source.

    Tests L(a)^T X L(a) = L'(tau a)^T X L'(tau a) with X the target
    representation at f(z).
    """
    tol = cfg.tol if tol is None else tol
    worst = 0.0
    for _ in range(samples):
        z = random_point(m.source.total, rng)
        a = random_element(m.source.group, rng).value
        x = matrix_rep(m.target, t, m.f.eval(z), cfg)
        l_src = extract_base_change(m.source, a, z, cfg)
        l_tgt = extract_base_change(m.target, m.tau(a), m.f.eval(z), cfg)
        dev = float(np.linalg.norm(l_src.T @ x @ l_src - l_tgt.T @ x @ l_tgt))
        worst = max(worst, dev / max(1.0, float(np.linalg.norm(x))))
    return Report(passed=worst <= tol, max_deviation=worst, samples=samples)


def invariance_group_member(
    s: SSpace,
    t: Tensor02Field,
    z: PointOn,
    d: np.ndarray,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
) -> bool:
    """Whether D preserves the representation at z: D^T rep D = rep."""
    tol = cfg.tol if tol is None else tol
    d = np.asarray(d, dtype=float)
    if abs(np.linalg.det(d)) < 1e-12:
        raise Singular("candidate invariance-group member is singular")
    rep = matrix_rep(s, t, z, cfg)
    dev = float(np.linalg.norm(d.T @ rep @ d - rep))
    return dev <= tol * max(1.0, float(np.linalg.norm(rep)))


def conjugate_by_base_change(
    s: SSpace, a_value, d: np.ndarray, z: PointOn, cfg: DiffConfig = DEFAULT
) -> np.ndarray:
    """L(a)^-1 D L(a): carries invariance-group members from z to z . a.

    With rep(z . a) = L^T rep(z) L, a matrix D preserving rep(z) conjugates
    to L^-1 D L preserving rep(z . a).
    """
    l_mat = extract_base_change(s, a_value, z, cfg)
    return np.linalg.inv(l_mat) @ np.asarray(d, dtype=float) @ l_mat


def is_invariant_tensor(
    m: SSpaceMorphism,
    t: Tensor02Field,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
) -> Report:
    """Whether the representation is preserved: rep_target(f(z)) = rep_source(z).

    Cross-checked against membership of C(z) in the invariance group of
    the representation; the two formulations must agree.
    """
    tol = cfg.tol if tol is None else tol
    worst = 0.0
    agree = True
    for _ in range(samples):
        z = random_point(m.source.total, rng)
        rep_src = matrix_rep(m.source, t, z, cfg)
        rep_tgt = matrix_rep(m.target, t, m.f.eval(z), cfg)
        scale = max(1.0, float(np.linalg.norm(rep_src)))
        dev = float(np.linalg.norm(rep_tgt - rep_src)) / scale
        worst = max(worst, dev)
        c = linking_map(m, z, cfg)
        member_dev = float(np.linalg.norm(c.T @ rep_src @ c - rep_src)) / scale
        if (dev <= tol) != (member_dev <= tol):
            # the two tests can only disagree when rep_tgt(f(z)) != C^T rep C,
            # i.e. when the pullback law itself is broken
            agree = False
    detail = "" if agree else "direct comparison and group-membership test disagree"
    return Report(passed=worst <= tol and agree, max_deviation=worst, samples=samples, detail=detail)


def iterate_pullback(
    m: SSpaceMorphism,
    t: Tensor02Field,
    count: int,
    z: PointOn,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
) -> np.ndarray:
    """Representation of the count-th iterated pullback at z.

    The j-th iterate is (C^T)^j rep C^j; it corresponds to a tensor field
    only if the equivariance identity holds at every intermediate power,
    which is verified on samples.  Raises NotATensor with the first
    failing power.
    """
    tol = cfg.tol if tol is None else tol
    if count < 0:
        raise ValueError("count must be nonnegative")
    probes = [random_point(m.source.total, rng) for _ in range(max(2, samples // 20))]
    group_vals = [random_element(m.source.group, rng).value for _ in range(max(3, samples // 10))]
    for j in range(1, count + 1):
        worst = 0.0
        for zp in probes:
            c = linking_map(m, zp, cfg)
            rep = matrix_rep(m.source, t, zp, cfg)
            mj = np.linalg.matrix_power(c.T, j) @ rep @ np.linalg.matrix_power(c, j)
            scale = max(1.0, float(np.linalg.norm(mj)))
            for a in group_vals:
                l_src = extract_base_change(m.source, a, zp, cfg)
                l_tgt = extract_base_change(m.target, m.tau(a), m.f.eval(zp), cfg)
                dev = float(
                    np.linalg.norm(l_src.T @ mj @ l_src - l_tgt.T @ mj @ l_tgt)
                )
                worst = max(worst, dev / scale)
        if worst > tol:
            raise NotATensor(j, f"iterate {j} fails equivariance by {worst:.3e}")
    c = linking_map(m, z, cfg)
    rep = matrix_rep(m.source, t, z, cfg)
    return np.linalg.matrix_power(c.T, count) @ rep @ np.linalg.matrix_power(c, count)


def over_map(m: SSpaceMorphism, z: PointOn, cfg: DiffConfig = DEFAULT) -> np.ndarray:
    """The matrix A(z) expressing pushed-forward source frames in target frames.

    Columns 1..n hold the coefficients of h_* e_i(z); the remaining
    n' - n columns are zero.  A has rank n when h is an immersion.
    """
    src, tgt = m.source, m.target
    fz = m.f.eval(z)
    e_tgt = frame_matrix(tgt, fz)
    p_src = src.psi.eval(z)
    cols = np.zeros((tgt.base.ambient_dim, tgt.n))
    rows_src = np.asarray(src.frames(z), dtype=float)
    for i in range(src.n):
        vec = Tangent(p_src, rows_src[i])
        if m.over_identity:
            cols[:, i] = vec.vec
        else:
            cols[:, i] = pushforward(m.over, vec, cfg).vec
    res = solve_least_squares(e_tgt, cols, cfg)
    if res.residual > 1e-4 * max(1.0, float(np.linalg.norm(cols))):
        raise ResidualTooLarge(f"over-map fit residual {res.residual:.3e}")
    a = res.solution
    if numerical_rank(a[:, : src.n], cfg) < src.n:
        raise RankDeficient("pushed-forward frames are dependent; base map is not an immersion")
    return a


def is_subsspace(
    m: SSpaceMorphism,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
) -> Report:
    """Whether (f, tau, h) exhibits the source as a frame subspace of the target.

    Spot-checks that h is an injective immersion, f is an immersion, and
    the over-map A is constant across sampled points.
    """
    tol = cfg.tol if tol is None else tol
    src = m.source
    pts = [random_point(src.total, rng) for _ in range(max(3, samples // 10))]
    a_ref = over_map(m, pts[0], cfg)
    worst = 0.0
    detail = ""
    for z in pts[1:]:
        worst = max(worst, float(np.linalg.norm(over_map(m, z, cfg) - a_ref)))
    for z in pts:
        jac = differential(m.f.coord_fn, z.coords, cfg) if m.f.jacobian is None else m.f.jacobian(z.coords)
        basis = np.asarray(src.total.tangent_basis(z.coords), dtype=float)
        if numerical_rank(jac @ basis.T, cfg) < src.total.dim:
            detail = "f drops rank"
            worst = max(worst, 1.0)
    if not m.over_identity:
        for i, z in enumerate(pts):
            for w in pts[i + 1 :]:
                pz = src.psi.eval(z).coords
                pw = src.psi.eval(w).coords
                gap = float(np.linalg.norm(pz - pw))
                if gap > 1e-3:
                    img_gap = float(
                        np.linalg.norm(
                            np.asarray(m.over.coord_fn(pz)) - np.asarray(m.over.coord_fn(pw))
                        )
                    )
                    if img_gap <= tol:
                        detail = "base map identifies distinct points"
                        worst = max(worst, 1.0)
    return Report(passed=worst <= tol, max_deviation=worst, samples=len(pts), detail=detail)
