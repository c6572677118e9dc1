"""Tangent-bundle instances: adapted frames of TM over the flat plane and
the round sphere, plus the unit-tangent restriction.

Adapted frames pair an orthonormal base frame with the fiber coordinates
of the tangent vector, so the structure group is O(2) acting on both at
once.  Bundle metrics (Sasaki, Cheeger-Gromoll) get closed-form value
checks here.
"""

from __future__ import annotations

import numpy as np

from ..connections import (
    ConnectionFunction,
    connection_from_bases,
    connection_from_k,
    lifted_metric,
    splitting_report,
)
from ..core import SSpace, matrix_rep
from ..geometry import (
    Manifold,
    PointOn,
    SmoothMap,
    Tangent,
    Tensor02Field,
    ambient_dot_metric,
    euclidean,
    polynomial_tensor,
    product_manifold,
    random_point,
    scale_tensor,
    sphere,
)
from ..groups import AlgebraElement, group_manifold, orthogonal, sign_group
from ..morphisms import SSpaceMorphism, is_invariant_tensor, is_subsspace, iterate_pullback, over_map
from ..report import Report
from .base import (
    CatalogEntry,
    Check,
    RunContext,
    admits_run,
    cocycle_run,
    coframe_duality_run,
    connection_run,
    dimension_run,
    expect_failure,
    fibration_natural_run,
    global_frame_run,
    invariance_run,
    iterate_equivalence_run,
    morphism_run,
    natural_run,
    ok,
    projection_map,
    pullback_law_run,
    rep_value_run,
    right_translation_automorphism,
    rigidity_run,
    rot2,
    roundtrip_matrix_run,
    roundtrip_tensor_run,
    submersion_run,
    theta_equivariance_run,
    transitivity_run,
    vector_rep_run,
)

J2 = np.array([[0.0, -1.0], [1.0, 0.0]])


def orthonormal_frame(q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic orthonormal basis of the plane orthogonal to unit q."""
    k = int(np.argmin(np.abs(q)))
    v = np.zeros(3)
    v[k] = 1.0
    v -= (v @ q) * q
    u1 = v / np.linalg.norm(v)
    return u1, np.cross(q, u1)


# ---------------------------------------------------------------------------
# Base manifolds and bundle metrics


def tm_sphere_base() -> Manifold:
    """Tangent vectors of the unit sphere, as pairs (q, w) in R^6."""

    def contains(x: np.ndarray, tol: float = 1e-6) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (6,) or not np.all(np.isfinite(x)):
            return False
        q, w = x[:3], x[3:]
        return abs(q @ q - 1.0) <= 10 * tol and abs(q @ w) <= 10 * tol

    def tangent_basis(x: np.ndarray) -> np.ndarray:
        q, w = x[:3], x[3:]
        t1, t2 = orthonormal_frame(q)
        rows = [
            np.concatenate([t1, -(t1 @ w) * q]),
            np.concatenate([t2, -(t2 @ w) * q]),
            np.concatenate([np.zeros(3), t1]),
            np.concatenate([np.zeros(3), t2]),
        ]
        return np.array(rows)

    def sampler(rng: np.random.Generator) -> np.ndarray:
        q = rng.standard_normal(3)
        q /= np.linalg.norm(q)
        w = rng.normal(0.0, 1.5, size=3)
        w -= (w @ q) * q
        return np.concatenate([q, w])

    return Manifold(
        name="TM(S^2)", dim=4, ambient_dim=6, contains=contains,
        tangent_basis=tangent_basis, sampler=sampler,
    )


def t1_sphere_base() -> Manifold:
    """Unit tangent vectors of the sphere: orthonormal pairs (q, w) in R^6."""

    basis_w = [
        np.array([[0.0, 0, 0], [0, 0, -1.0], [0, 1.0, 0]]),
        np.array([[0.0, 0, 1.0], [0, 0, 0], [-1.0, 0, 0]]),
        np.array([[0.0, -1.0, 0], [1.0, 0, 0], [0, 0, 0]]),
    ]

    def contains(x: np.ndarray, tol: float = 1e-6) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (6,) or not np.all(np.isfinite(x)):
            return False
        q, w = x[:3], x[3:]
        return (
            abs(q @ q - 1.0) <= 10 * tol
            and abs(w @ w - 1.0) <= 10 * tol
            and abs(q @ w) <= 10 * tol
        )

    def tangent_basis(x: np.ndarray) -> np.ndarray:
        q, w = x[:3], x[3:]
        return np.array([np.concatenate([m @ q, m @ w]) for m in basis_w])

    def sampler(rng: np.random.Generator) -> np.ndarray:
        mat, _ = np.linalg.qr(rng.standard_normal((3, 3)))
        return np.concatenate([mat[:, 0], mat[:, 1]])

    return Manifold(
        name="T1(S^2)", dim=3, ambient_dim=6, contains=contains,
        tangent_basis=tangent_basis, sampler=sampler,
    )


def _k_flat(coords: np.ndarray, vec: np.ndarray) -> np.ndarray:
    return np.asarray(vec, dtype=float)[2:]


def _k_sphere(coords: np.ndarray, vec: np.ndarray) -> np.ndarray:
    q = np.asarray(coords, dtype=float)[:3]
    dw = np.asarray(vec, dtype=float)[3:]
    return dw - (q @ dw) * q


def sasaki_tensor(base: Manifold, split: int, k_map, name: str) -> Tensor02Field:
    """g(pi_* a, pi_* b) + g(K a, K b) for the flat or round base metric."""

    def ev(p: PointOn, u: Tangent, v: Tangent) -> float:
        ka = k_map(p.coords, u.vec)
        kb = k_map(p.coords, v.vec)
        return float(u.vec[:split] @ v.vec[:split] + ka @ kb)

    return Tensor02Field(base, ev, name=name, symmetric=True)


def cheeger_gromoll_tensor(base: Manifold, split: int, k_map, name: str) -> Tensor02Field:
    """Same horizontal part; the vertical part is weighted by 1/(1+|w|^2)
    and picks up the radial term (K a . w)(K b . w)."""

    def ev(p: PointOn, u: Tangent, v: Tangent) -> float:
        w = p.coords[split:]
        ka = k_map(p.coords, u.vec)
        kb = k_map(p.coords, v.vec)
        radial = (ka @ w) * (kb @ w)
        return float(u.vec[:split] @ v.vec[:split] + (ka @ kb + radial) / (1.0 + w @ w))

    return Tensor02Field(base, ev, name=name, symmetric=True)


def _cg_block(xi: np.ndarray) -> np.ndarray:
    return np.block(
        [
            [np.eye(2), np.zeros((2, 2))],
            [np.zeros((2, 2)), (np.eye(2) + np.outer(xi, xi)) / (1.0 + xi @ xi)],
        ]
    )


# ---------------------------------------------------------------------------
# tangent-flat-2: adapted frames of the tangent bundle of the plane


def tangent_flat_sspace() -> SSpace:
    o2 = orthogonal(2)
    total = product_manifold(
        [euclidean(2, name="R^2"), group_manifold(o2), euclidean(2, name="fiber-R^2")],
        name="R^2 x O(2) x R^2",
    )
    base = euclidean(4, name="TM(R^2)")

    def psi_fn(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        u = x[2:6].reshape(2, 2)
        return np.concatenate([x[:2], u @ x[6:8]])

    def psi_jac(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        u, xi = x[2:6].reshape(2, 2), x[6:8]
        jac = np.zeros((4, 8))
        jac[:2, :2] = np.eye(2)
        jac[2, 2:4] = xi
        jac[3, 4:6] = xi
        jac[2:4, 6:8] = u
        return jac

    psi = SmoothMap(total, base, psi_fn, jacobian=psi_jac, name="bundle-coords")

    def action(z: PointOn, a) -> PointOn:
        a = np.asarray(a, dtype=float)
        u = z.coords[2:6].reshape(2, 2)
        return PointOn(
            total,
            np.concatenate([z.coords[:2], (u @ a).ravel(), z.coords[6:8] @ a]),
        )

    def frames(z: PointOn) -> np.ndarray:
        ut = z.coords[2:6].reshape(2, 2).T
        rows = np.zeros((4, 4))
        rows[:2, :2] = ut
        rows[2:, 2:] = ut
        return rows

    def fiber_section(p: PointOn) -> PointOn:
        return PointOn(total, np.concatenate([p.coords[:2], np.eye(2).ravel(), p.coords[2:]]))

    def witness(z: PointOn, zbar: PointOn) -> np.ndarray:
        u = z.coords[2:6].reshape(2, 2)
        ubar = zbar.coords[2:6].reshape(2, 2)
        return u.T @ ubar

    return SSpace(
        name="tangent-flat-2",
        total=total,
        base=base,
        group=o2,
        psi=psi,
        action=action,
        frames=frames,
        fiber_section=fiber_section,
        fiber_split=(6, 8),
        witness_finder=witness,
        analytic=True,
    )


def build_tangent_flat() -> CatalogEntry:
    s = tangent_flat_sspace()
    base = s.base
    g_s = sasaki_tensor(base, 2, _k_flat, "sasaki-flat")
    g_cg = cheeger_gromoll_tensor(base, 2, _k_flat, "cheeger-gromoll-flat")
    poly = polynomial_tensor(base, seed=31)
    m_rot = right_translation_automorphism(s, rot2(0.9), "rotation-translation")
    algebra = [AlgebraElement(s.group, J2)]

    conn = connection_from_bases(
        s,
        horizontal_basis=lambda z: np.array(
            [
                [1, 0, 0, 0, 0, 0, 0, 0],
                [0, 1, 0, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0, 1, 0],
                [0, 0, 0, 0, 0, 0, 0, 1],
            ],
            dtype=float,
        ),
        vertical_basis=lambda z: np.concatenate(
            [np.zeros(2), (z.coords[2:6].reshape(2, 2) @ J2).ravel(), z.coords[6:8] @ J2]
        ).reshape(1, 8),
        name="product-splitting",
    )

    cross_block = np.zeros((4, 4))
    cross_block[:2, 2:] = np.diag([1.0, 2.0])
    cross_block[2:, :2] = np.diag([1.0, 2.0])

    def equivariant_matrix_map(z: PointOn) -> np.ndarray:
        p, u = z.coords[:2], z.coords[2:6].reshape(2, 2)
        m = np.array([[1.0 + p[0] ** 2, 0.3], [0.3, 2.0]])
        b = u.T @ m @ u
        out = np.zeros((4, 4))
        out[:2, :2] = b
        out[2:, 2:] = b
        return out

    def vec_field(p: PointOn) -> Tangent:
        q, w = p.coords[:2], p.coords[2:]
        return Tangent(p, np.array([w[1], q[0], 1.0 + q[1] ** 2, w[0]]))

    def iterate_preserves_round(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(3, ctx.samples // 20)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            val = iterate_pullback(m_rot, g_s, 3, z, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)
            worst = max(worst, float(np.linalg.norm(val - np.eye(4))))
        return ok(worst, ctx.tol, count)

    def rotation_preserves_sasaki(ctx: RunContext) -> Report:
        return is_invariant_tensor(m_rot, g_s, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)

    def rotation_breaks_cg(ctx: RunContext) -> Report:
        return expect_failure(
            is_invariant_tensor(m_rot, g_cg, ctx.samples, ctx.rng, ctx.cfg, ctx.tol), ctx.tol
        )

    def cg_formula(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(5, ctx.samples // 4)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            expected = _cg_block(z.coords[6:8])
            worst = max(worst, float(np.linalg.norm(matrix_rep(s, g_cg, z, ctx.cfg) - expected)))
        return ok(worst, ctx.tol, count)

    def cg_pinned(rng: np.random.Generator) -> PointOn:
        coords = random_point(s.total, rng).coords.copy()
        coords[6:8] = (1.0, 0.0)
        return PointOn(s.total, coords)

    checks = (
        Check("rigidity", "frames move by a point-independent group representation", "structure", rigidity_run(s)),
        Check("dimension-identity", "dim N = dim TM + dim O(2), free action", "structure", dimension_run(s, 0)),
        Check("fiber-transitivity", "group carries any adapted frame to the section frame", "structure", transitivity_run(s)),
        Check("admits-paired-blocks", "the round bundle form is preserved by all base changes", "structure", admits_run(s, np.eye(4), True)),
        Check("admits-rejects-cross-block", "an anisotropic cross-block form is moved", "structure", admits_run(s, cross_block, False)),
        Check("roundtrip-tensor", "tensor to matrix map and back is the identity", "correspondence", roundtrip_tensor_run(s, g_cg)),
        Check("roundtrip-matrix", "equivariant paired-block maps correspond to tensors", "correspondence", roundtrip_matrix_run(s, equivariant_matrix_map)),
        Check("rep-invariance", "representations transform by congruence with the base change", "correspondence", invariance_run(s, g_cg)),
        Check("vector-rep-equivariance", "vector coefficients transform by the inverse base change", "correspondence", vector_rep_run(s, vec_field)),
        Check("rotation-automorphism", "right translation with conjugation is a morphism", "morphisms", morphism_run(m_rot)),
        Check("cocycle-law", "linking maps satisfy the base-change cocycle law", "morphisms", cocycle_run(m_rot)),
        Check("pullback-law", "representations pull back by congruence with the linking map", "morphisms", pullback_law_run(m_rot, g_cg)),
        Check("rotation-preserves-sasaki", "the flat Sasaki form is preserved by rotations", "morphisms", rotation_preserves_sasaki),
        Check("rotation-breaks-cg", "the Cheeger-Gromoll form is moved by rotations", "morphisms", rotation_breaks_cg),
        Check("iterate-preserves-sasaki", "iterated pullbacks keep the round bundle form", "morphisms", iterate_preserves_round),
        Check("iterate-consistency", "iterate invariance at a power forces plain invariance", "morphisms", iterate_equivalence_run(m_rot, g_cg, 2)),
        Check("connection-laws", "the product splitting is idempotent, vertical, equivariant", "connections", connection_run(conn)),
        Check("coframe-duality", "lifted frames and the fundamental field are dual to the coframes", "connections", coframe_duality_run(conn, algebra)),
        Check("theta-equivariance", "the soldering coframe transforms by the base change", "connections", theta_equivariance_run(s)),
        Check("global-frame", "lifts plus the fundamental field frame the total space", "connections", global_frame_run(conn, algebra)),
        Check("sasaki-value", "the flat Sasaki representation is the identity", "naturality", rep_value_run(s, g_s, np.eye(4))),
        Check("sasaki-natural", "the flat Sasaki form has a constant representation", "naturality", natural_run(s, g_s, True)),
        Check("cg-value-formula", "the Cheeger-Gromoll representation matches its closed form", "naturality", cg_formula),
        Check("cg-pinned-value", "at unit radial fiber coordinates the lower block is diag(1, 1/2)", "naturality", rep_value_run(s, g_cg, _cg_block(np.array([1.0, 0.0])), at=cg_pinned)),
        Check("cg-not-natural", "the Cheeger-Gromoll form is not constant over adapted frames", "naturality", natural_run(s, g_cg, False)),
        Check("sasaki-fiber-dependence", "the Sasaki representation depends only on the fiber slice", "naturality", fibration_natural_run(s, g_s, True)),
        Check("cg-fiber-dependence", "the Cheeger-Gromoll representation depends only on the fiber slice", "naturality", fibration_natural_run(s, g_cg, True)),
        Check("poly-fiber-dependence-fails", "a base-dependent tensor fails fiber-only dependence", "naturality", fibration_natural_run(s, poly, False)),
    )

    return CatalogEntry(
        name="tangent-flat-2",
        summary="adapted frames of TM over the flat plane; O(2) twists base frame and fiber together",
        checks=checks,
        objects={
            "sspace": s,
            "sasaki": g_s,
            "cheeger_gromoll": g_cg,
            "connection": conn,
            "morphisms": {"rotation": m_rot},
            "overid_sweeps": [(m_rot, g_cg)],
        },
    )


# ---------------------------------------------------------------------------
# tangent-sphere2: adapted frames of the tangent bundle of the round sphere


def _sphere_frame_manifold(with_xi: bool) -> Manifold:
    amb = 11 if with_xi else 9
    dim = 5 if with_xi else 3
    basis_w = [
        np.array([[0.0, 0, 0], [0, 0, -1.0], [0, 1.0, 0]]),
        np.array([[0.0, 0, 1.0], [0, 0, 0], [-1.0, 0, 0]]),
        np.array([[0.0, -1.0, 0], [1.0, 0, 0], [0, 0, 0]]),
    ]

    def contains(x: np.ndarray, tol: float = 1e-6) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (amb,) or not np.all(np.isfinite(x)):
            return False
        p, u1, u2 = x[:3], x[3:6], x[6:9]
        lim = 10 * tol
        return (
            abs(p @ p - 1.0) <= lim
            and abs(u1 @ u1 - 1.0) <= lim
            and abs(u2 @ u2 - 1.0) <= lim
            and abs(u1 @ u2) <= lim
            and abs(u1 @ p) <= lim
            and abs(u2 @ p) <= lim
        )

    def tangent_basis(x: np.ndarray) -> np.ndarray:
        p, u1, u2 = x[:3], x[3:6], x[6:9]
        rows = []
        for m in basis_w:
            row = np.concatenate([m @ p, m @ u1, m @ u2, np.zeros(amb - 9)])
            rows.append(row)
        if with_xi:
            for k in (9, 10):
                row = np.zeros(amb)
                row[k] = 1.0
                rows.append(row)
        return np.array(rows)

    def sampler(rng: np.random.Generator) -> np.ndarray:
        mat, _ = np.linalg.qr(rng.standard_normal((3, 3)))
        head = np.concatenate([mat[:, 2], mat[:, 0], mat[:, 1]])
        if not with_xi:
            return head
        return np.concatenate([head, rng.normal(0.0, 1.5, size=2)])

    name = "OFr(S^2) x R^2" if with_xi else "OFr(S^2)"
    return Manifold(
        name=name, dim=dim, ambient_dim=amb, contains=contains,
        tangent_basis=tangent_basis, sampler=sampler,
    )


def tangent_sphere_sspace() -> SSpace:
    o2 = orthogonal(2)
    total = _sphere_frame_manifold(with_xi=True)
    base = tm_sphere_base()

    def psi_fn(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        u = x[3:9].reshape(2, 3)
        return np.concatenate([x[:3], x[9:11] @ u])

    def psi_jac(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        u, xi = x[3:9].reshape(2, 3), x[9:11]
        jac = np.zeros((6, 11))
        jac[:3, :3] = np.eye(3)
        jac[3:6, 3:6] = xi[0] * np.eye(3)
        jac[3:6, 6:9] = xi[1] * np.eye(3)
        jac[3:6, 9] = u[0]
        jac[3:6, 10] = u[1]
        return jac

    psi = SmoothMap(total, base, psi_fn, jacobian=psi_jac, name="bundle-coords")

    def action(z: PointOn, a) -> PointOn:
        a = np.asarray(a, dtype=float)
        u = z.coords[3:9].reshape(2, 3)
        return PointOn(
            total,
            np.concatenate([z.coords[:3], (a.T @ u).ravel(), z.coords[9:11] @ a]),
        )

    def frames(z: PointOn) -> np.ndarray:
        p, u, xi = z.coords[:3], z.coords[3:9].reshape(2, 3), z.coords[9:11]
        return np.array(
            [
                np.concatenate([u[0], -xi[0] * p]),
                np.concatenate([u[1], -xi[1] * p]),
                np.concatenate([np.zeros(3), u[0]]),
                np.concatenate([np.zeros(3), u[1]]),
            ]
        )

    def fiber_section(p: PointOn) -> PointOn:
        q, w = p.coords[:3], p.coords[3:]
        u1, u2 = orthonormal_frame(q)
        return PointOn(total, np.concatenate([q, u1, u2, [w @ u1, w @ u2]]))

    def witness(z: PointOn, zbar: PointOn) -> np.ndarray:
        u = z.coords[3:9].reshape(2, 3)
        ubar = zbar.coords[3:9].reshape(2, 3)
        return u @ ubar.T

    return SSpace(
        name="tangent-sphere2",
        total=total,
        base=base,
        group=o2,
        psi=psi,
        action=action,
        frames=frames,
        fiber_section=fiber_section,
        fiber_split=(9, 11),
        witness_finder=witness,
        analytic=True,
    )


def sphere_frames_sspace() -> SSpace:
    """Orthonormal frames of the sphere itself, over the sphere."""
    o2 = orthogonal(2)
    total = _sphere_frame_manifold(with_xi=False)
    base = sphere(2)
    psi = projection_map(total, base, name="foot-point")

    def action(z: PointOn, a) -> PointOn:
        a = np.asarray(a, dtype=float)
        u = z.coords[3:9].reshape(2, 3)
        return PointOn(total, np.concatenate([z.coords[:3], (a.T @ u).ravel()]))

    def frames(z: PointOn) -> np.ndarray:
        return z.coords[3:9].reshape(2, 3)

    def fiber_section(p: PointOn) -> PointOn:
        u1, u2 = orthonormal_frame(p.coords)
        return PointOn(total, np.concatenate([p.coords, u1, u2]))

    def witness(z: PointOn, zbar: PointOn) -> np.ndarray:
        u = z.coords[3:9].reshape(2, 3)
        ubar = zbar.coords[3:9].reshape(2, 3)
        return u @ ubar.T

    return SSpace(
        name="sphere-frames",
        total=total,
        base=base,
        group=o2,
        psi=psi,
        action=action,
        frames=frames,
        fiber_section=fiber_section,
        fiber_split=(3, 9),
        witness_finder=witness,
        analytic=True,
    )


def build_tangent_sphere() -> CatalogEntry:
    s = tangent_sphere_sspace()
    base = s.base
    g_s = sasaki_tensor(base, 3, _k_sphere, "sasaki-round")
    g_cg = cheeger_gromoll_tensor(base, 3, _k_sphere, "cheeger-gromoll-round")
    poly = polynomial_tensor(base, seed=37)
    m_rot = right_translation_automorphism(s, rot2(0.6), "rotation-translation")

    ofr = sphere_frames_sspace()
    k_round = ConnectionFunction(base=ofr.base, eval=_k_sphere, name="round")
    conn_ofr = connection_from_k(ofr, k_round, name="round-kernel")
    algebra = [AlgebraElement(ofr.group, J2)]
    round_g = ambient_dot_metric(ofr.base, name="round")
    lifted = lifted_metric(conn_ofr, round_g, algebra)

    def splitting_good(ctx: RunContext) -> Report:
        for _ in range(3):
            z = random_point(ofr.total, ctx.rng)
            rep = splitting_report(ofr, k_round, z, ctx.cfg)
            good = (
                rep["injective"] and rep["image_ok"] and rep["split_ok"]
                and rep["agrees"] and rep["horizontal_dim"] == 2
            )
            if not good:
                return Report(False, 1.0, 3, f"diagnostics {rep}")
        return Report(True, 0.0, 3, "")

    def rotation_preserves_sasaki(ctx: RunContext) -> Report:
        return is_invariant_tensor(m_rot, g_s, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)

    def rotation_breaks_cg(ctx: RunContext) -> Report:
        return expect_failure(
            is_invariant_tensor(m_rot, g_cg, ctx.samples, ctx.rng, ctx.cfg, ctx.tol), ctx.tol
        )

    def cg_formula(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(5, ctx.samples // 4)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            expected = _cg_block(z.coords[9:11])
            worst = max(worst, float(np.linalg.norm(matrix_rep(s, g_cg, z, ctx.cfg) - expected)))
        return ok(worst, ctx.tol, count)

    def cg_pinned(rng: np.random.Generator) -> PointOn:
        coords = random_point(s.total, rng).coords.copy()
        coords[9:11] = (1.0, 0.0)
        return PointOn(s.total, coords)

    checks = (
        Check("rigidity", "frames move by a point-independent group representation", "structure", rigidity_run(s)),
        Check("dimension-identity", "dim N = dim TM(S^2) + dim O(2), free action", "structure", dimension_run(s, 0)),
        Check("fiber-transitivity", "group carries any adapted frame to the section frame", "structure", transitivity_run(s)),
        Check("roundtrip-tensor", "tensor to matrix map and back is the identity", "correspondence", roundtrip_tensor_run(s, g_cg)),
        Check("rep-invariance", "representations transform by congruence with the base change", "correspondence", invariance_run(s, g_cg)),
        Check("rotation-automorphism", "right translation with conjugation is a morphism", "morphisms", morphism_run(m_rot)),
        Check("cocycle-law", "linking maps satisfy the base-change cocycle law", "morphisms", cocycle_run(m_rot)),
        Check("pullback-law", "representations pull back by congruence with the linking map", "morphisms", pullback_law_run(m_rot, g_cg)),
        Check("rotation-preserves-sasaki", "the round Sasaki form is preserved by rotations", "morphisms", rotation_preserves_sasaki),
        Check("rotation-breaks-cg", "the Cheeger-Gromoll form is moved by rotations", "morphisms", rotation_breaks_cg),
        Check("frame-derivative-splitting", "the round covariant derivative splits the frame space", "connections", splitting_good),
        Check("kernel-connection-laws", "the kernel connection is idempotent, vertical, equivariant", "connections", connection_run(conn_ofr)),
        Check("coframe-duality", "lifted frames and the fundamental field are dual to the coframes", "connections", coframe_duality_run(conn_ofr, algebra)),
        Check("theta-equivariance", "the soldering coframe transforms by the base change", "connections", theta_equivariance_run(ofr)),
        Check("global-frame", "lifts plus the fundamental field frame the frame space", "connections", global_frame_run(conn_ofr, algebra)),
        Check("lifted-metric-submersion", "the lifted metric makes the foot-point map a Riemannian submersion", "connections", submersion_run(conn_ofr, round_g, lifted)),
        Check("sasaki-value", "the round Sasaki representation is the identity", "naturality", rep_value_run(s, g_s, np.eye(4))),
        Check("sasaki-natural", "the round Sasaki form has a constant representation", "naturality", natural_run(s, g_s, True)),
        Check("cg-value-formula", "the Cheeger-Gromoll representation matches its closed form", "naturality", cg_formula),
        Check("cg-pinned-value", "at unit radial fiber coordinates the lower block is diag(1, 1/2)", "naturality", rep_value_run(s, g_cg, _cg_block(np.array([1.0, 0.0])), at=cg_pinned)),
        Check("cg-not-natural", "the Cheeger-Gromoll form is not constant over adapted frames", "naturality", natural_run(s, g_cg, False)),
        Check("cg-fiber-dependence", "the Cheeger-Gromoll representation depends only on the fiber slice", "naturality", fibration_natural_run(s, g_cg, True)),
        Check("poly-fiber-dependence-fails", "a base-dependent tensor fails fiber-only dependence", "naturality", fibration_natural_run(s, poly, False)),
    )

    return CatalogEntry(
        name="tangent-sphere2",
        summary="adapted frames of TM over the round sphere, with the frame-space connection",
        checks=checks,
        objects={
            "sspace": s,
            "frame_space": ofr,
            "sasaki": g_s,
            "cheeger_gromoll": g_cg,
            "connection_fn": k_round,
            "connection": conn_ofr,
            "morphisms": {"rotation": m_rot},
            "overid_sweeps": [(m_rot, g_cg)],
        },
    )


# ---------------------------------------------------------------------------
# unit-tangent-sphere2: the frame space restricted to unit tangent vectors


def unit_tangent_sspace() -> SSpace:
    grp = sign_group()
    total = _sphere_frame_manifold(with_xi=False)
    base = t1_sphere_base()

    def psi_fn(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.concatenate([x[:3], x[6:9]])

    def psi_jac(x: np.ndarray) -> np.ndarray:
        jac = np.zeros((6, 9))
        jac[:3, :3] = np.eye(3)
        jac[3:, 6:9] = np.eye(3)
        return jac

    psi = SmoothMap(total, base, psi_fn, jacobian=psi_jac, name="second-leg")

    def action(z: PointOn, b) -> PointOn:
        b_val = float(np.asarray(b, dtype=float).reshape(-1)[0])
        coords = z.coords.copy()
        coords[3:6] = b_val * coords[3:6]
        return PointOn(total, coords)

    def frames(z: PointOn) -> np.ndarray:
        p, u1, u2 = z.coords[:3], z.coords[3:6], z.coords[6:9]
        return np.array(
            [
                np.concatenate([u1, np.zeros(3)]),
                np.concatenate([u2, -p]),
                np.concatenate([np.zeros(3), u1]),
            ]
        )

    def fiber_section(p: PointOn) -> PointOn:
        q, w = p.coords[:3], p.coords[3:]
        return PointOn(total, np.concatenate([q, np.cross(w, q), w]))

    def witness(z: PointOn, zbar: PointOn) -> np.ndarray:
        return np.array([[float(np.sign(z.coords[3:6] @ zbar.coords[3:6]))]])

    return SSpace(
        name="unit-tangent-sphere2",
        total=total,
        base=base,
        group=grp,
        psi=psi,
        action=action,
        frames=frames,
        fiber_section=fiber_section,
        fiber_split=(9, 9),
        witness_finder=witness,
        analytic=True,
    )


def build_unit_tangent() -> CatalogEntry:
    s = unit_tangent_sspace()
    big = tangent_sphere_sspace()
    base = s.base
    g_s = sasaki_tensor(base, 3, _k_sphere, "sasaki-round")
    g_cg = cheeger_gromoll_tensor(base, 3, _k_sphere, "cheeger-gromoll-round")
    scaled = scale_tensor(g_s, lambda x: 1.0 + x[0] ** 2, name="bump-scaled")

    def incl_fn(x: np.ndarray) -> np.ndarray:
        return np.concatenate([np.asarray(x, dtype=float), [0.0, 1.0]])

    def incl_jac(x: np.ndarray) -> np.ndarray:
        jac = np.zeros((11, 9))
        jac[:9, :9] = np.eye(9)
        return jac

    over = SmoothMap(
        base, big.base, lambda x: np.asarray(x, dtype=float),
        jacobian=lambda x: np.eye(6), name="unit-inclusion",
    )
    m_incl = SSpaceMorphism(
        source=s,
        target=big,
        f=SmoothMap(s.total, big.total, incl_fn, jacobian=incl_jac, name="pin-second-leg"),
        tau=lambda b: np.diag([float(np.asarray(b).reshape(-1)[0]), 1.0]),
        over=over,
        name="unit-into-tangent",
    )

    expected_a = np.diag([1.0, 1.0, 1.0, 0.0])

    def overmap_value(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(4, ctx.samples // 25)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            worst = max(worst, float(np.linalg.norm(over_map(m_incl, z, ctx.cfg) - expected_a)))
        return ok(worst, ctx.tol, count)

    def fibration_equals_natural(ctx: RunContext) -> Report:
        from ..naturality import is_fibration_natural, is_lambda_natural

        n = max(20, ctx.samples // 4)
        for t in (g_s, scaled):
            fib = is_fibration_natural(s, t, n, ctx.rng, ctx.cfg, ctx.tol)
            lam = is_lambda_natural(s, t, n, ctx.rng, ctx.cfg, ctx.tol)
            if fib.passed != lam.passed:
                return Report(False, float("inf"), n, f"{t.name}: verdicts diverge")
        return Report(True, 0.0, n, "")

    checks = (
        Check("rigidity", "frames move by a point-independent sign representation", "structure", rigidity_run(s)),
        Check("dimension-identity", "dim N = dim T1(S^2), the sign group is discrete", "structure", dimension_run(s, 0)),
        Check("fiber-transitivity", "a sign flip carries any frame to the section frame", "structure", transitivity_run(s)),
        Check("roundtrip-tensor", "tensor to matrix map and back is the identity", "correspondence", roundtrip_tensor_run(s, g_s)),
        Check("rep-invariance", "representations transform by congruence with the sign change", "correspondence", invariance_run(s, g_cg)),
        Check("inclusion-morphism", "pinning the fiber coordinates maps into the tangent frame space", "morphisms", morphism_run(m_incl)),
        Check("inclusion-is-subspace", "the inclusion exhibits a frame subspace over the unit bundle", "morphisms", lambda ctx: is_subsspace(m_incl, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)),
        Check("inclusion-overmap-value", "pushed frames occupy the first three target frames", "morphisms", overmap_value),
        Check("sasaki-restricts-natural", "the restricted Sasaki form has constant representation", "naturality", natural_run(s, g_s, True)),
        Check("sasaki-restricted-value", "the restricted Sasaki representation is the identity", "naturality", rep_value_run(s, g_s, np.eye(3))),
        Check("cg-restricts-natural", "the restricted Cheeger-Gromoll form becomes natural on the unit bundle", "naturality", natural_run(s, g_cg, True)),
        Check("cg-restricted-value", "the restricted Cheeger-Gromoll representation is diag(1, 1, 1/2)", "naturality", rep_value_run(s, g_cg, np.diag([1.0, 1.0, 0.5]))),
        Check("scaled-not-natural", "a position-scaled form is not natural", "naturality", natural_run(s, scaled, False)),
        Check("fibration-equals-natural", "with no fiber parameter, fibration naturality is constancy", "naturality", fibration_equals_natural),
    )

    return CatalogEntry(
        name="unit-tangent-sphere2",
        summary="sphere frames over the unit tangent bundle; only a sign flip remains",
        checks=checks,
        objects={
            "sspace": s,
            "ambient": big,
            "sasaki": g_s,
            "cheeger_gromoll": g_cg,
            "inclusion": m_incl,
            "overid_sweeps": [],
        },
    )


def entries() -> list[CatalogEntry]:
    return [build_tangent_flat(), build_tangent_sphere(), build_unit_tangent()]
