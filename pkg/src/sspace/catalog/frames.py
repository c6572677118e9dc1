"""Second-order frames: frames of the frame space of the flat plane.

The total space carries a point, a plane frame u, and a second frame b
expressing derived frame vectors in terms of u.  The projection composes
them, so the group acts without moving the frames at all: the base change
is the identity representation, and equivariant matrix maps are exactly
the fiberwise-constant ones.  Naturality of a lifted bundle metric then
reduces to naturality of the ground metric.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from ..connections import connection_from_bases, connection_from_k, sasaki_mok_metric, splitting_report
from ..core import SSpace, matrix_rep, tensor_from_matrix
from ..errors import SplittingFailure
from ..geometry import (
    PointOn,
    SmoothMap,
    ambient_dot_metric,
    constant_matrix_tensor,
    product_manifold,
    random_point,
)
from ..groups import AlgebraElement, general_linear, group_manifold, trivial_group
from ..morphisms import SSpaceMorphism, invariance_group_member, linking_map
from ..naturality import is_lambda_natural
from ..report import Report
from .base import (
    CatalogEntry,
    Check,
    RunContext,
    cocycle_run,
    coframe_duality_run,
    connection_run,
    dimension_run,
    expect_raises,
    global_frame_run,
    invariance_run,
    morphism_run,
    ok,
    pullback_law_run,
    rigidity_run,
    roundtrip_matrix_run,
    roundtrip_tensor_run,
    theta_equivariance_run,
    transitivity_run,
)
from .flat import flat_connection_fn, lm_flat_sspace

J6 = np.block([[np.zeros((3, 3)), np.eye(3)], [-np.eye(3), np.zeros((3, 3))]])

_E = [np.eye(2)[:, [i]] @ np.eye(2)[[j], :] for i in range(2) for j in range(2)]


def _derived_frames(q: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Frame rows on R^2 x GL(2): two base translates and four fiber shifts."""
    rows = np.zeros((6, 6))
    rows[0, :2] = w[:, 0]
    rows[1, :2] = w[:, 1]
    for i in range(2):
        for j in range(2):
            rows[2 + 2 * i + j, 2:] = np.outer(w[:, j], np.eye(2)[i]).ravel()
    return rows


def frame_conn_sspace(lm: SSpace | None = None) -> SSpace:
    gl2 = general_linear(2)
    lm = lm_flat_sspace() if lm is None else lm
    total = product_manifold([lm.total, group_manifold(gl2)], name="R^2 x GL(2) x GL(2)")
    base = lm.total

    def psi_fn(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        u, b = x[2:6].reshape(2, 2), x[6:10].reshape(2, 2)
        return np.concatenate([x[:2], (u @ b).ravel()])

    def psi_jac(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        u, b = x[2:6].reshape(2, 2), x[6:10].reshape(2, 2)
        jac = np.zeros((6, 10))
        jac[:2, :2] = np.eye(2)
        for i in range(2):
            for j in range(2):
                r = 2 + 2 * i + j
                for l in range(2):
                    jac[r, 2 + 2 * i + l] = b[l, j]
                    jac[r, 6 + 2 * l + j] = u[i, l]
        return jac

    psi = SmoothMap(total, base, psi_fn, jacobian=psi_jac, name="compose-frames")

    def action(z: PointOn, a) -> PointOn:
        a = np.asarray(a, dtype=float)
        u, b = z.coords[2:6].reshape(2, 2), z.coords[6:10].reshape(2, 2)
        return PointOn(
            total,
            np.concatenate([z.coords[:2], (u @ a).ravel(), (np.linalg.solve(a, b)).ravel()]),
        )

    def frames(z: PointOn) -> np.ndarray:
        u, b = z.coords[2:6].reshape(2, 2), z.coords[6:10].reshape(2, 2)
        return _derived_frames(z.coords[:2], u @ b)

    def fiber_section(p: PointOn) -> PointOn:
        return PointOn(total, np.concatenate([p.coords, np.eye(2).ravel()]))

    def witness(z: PointOn, zbar: PointOn) -> np.ndarray:
        u = z.coords[2:6].reshape(2, 2)
        ubar = zbar.coords[2:6].reshape(2, 2)
        return np.linalg.solve(u, ubar)

    return SSpace(
        name="frame-conn-2",
        total=total,
        base=base,
        group=gl2,
        psi=psi,
        action=action,
        frames=frames,
        fiber_section=fiber_section,
        fiber_split=None,
        witness_finder=witness,
        analytic=True,
    )


def beta_sspace(lm: SSpace | None = None) -> SSpace:
    """The derived frames read as a one-point-fiber frame space over itself."""
    lm = lm_flat_sspace() if lm is None else lm
    total = lm.total

    psi = SmoothMap(
        total, total, lambda x: np.asarray(x, dtype=float),
        jacobian=lambda x: np.eye(6), name="identity",
    )

    def frames(z: PointOn) -> np.ndarray:
        return _derived_frames(z.coords[:2], z.coords[2:6].reshape(2, 2))

    return SSpace(
        name="derived-frames-beta",
        total=total,
        base=total,
        group=trivial_group(),
        psi=psi,
        action=lambda z, e: z,
        frames=frames,
        fiber_section=lambda p: PointOn(total, p.coords.copy()),
        fiber_split=(6, 6),
        witness_finder=lambda z, zbar: np.eye(1),
        analytic=True,
    )


def build_frame_conn() -> CatalogEntry:
    lm = lm_flat_sspace()
    s = frame_conn_sspace(lm)
    g2 = ambient_dot_metric(lm.base, name="dot")
    k_lm = flat_connection_fn(lm.base)
    one = lambda z: 1.0  # noqa: E731
    gt = sasaki_mok_metric(lm, k_lm, g2, one, [one, one], name="bundle-dot")
    null6 = constant_matrix_tensor(lm.total, np.zeros((6, 6)), name="null")
    beta = beta_sspace(lm)

    m_beta = SSpaceMorphism(
        source=beta,
        target=s,
        f=SmoothMap(
            beta.total, s.total,
            lambda x: np.concatenate([np.asarray(x, dtype=float), np.eye(2).ravel()]),
            jacobian=lambda x: np.vstack([np.eye(6), np.zeros((4, 6))]),
            name="unit-second-frame",
        ),
        tau=lambda e: np.eye(2),
        name="section-into-frame-conn",
    )

    conn = connection_from_bases(
        s,
        horizontal_basis=lambda z: np.hstack([np.eye(6), np.zeros((6, 4))]),
        vertical_basis=_fiber_basis,
        name="second-frame-splitting",
    )
    algebra = [AlgebraElement(s.group, e) for e in _E]
    k6 = flat_connection_fn(lm.total)

    def rep_formula(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(5, ctx.samples // 4)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            u, b = z.coords[2:6].reshape(2, 2), z.coords[6:10].reshape(2, 2)
            w = u @ b
            blk = w.T @ w
            expected = np.zeros((6, 6))
            for k in range(3):
                expected[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = blk
            worst = max(worst, float(np.linalg.norm(matrix_rep(s, gt, z, ctx.cfg) - expected)))
        return ok(worst, ctx.tolerance(True), count)

    def linking_is_identity(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(5, ctx.samples // 10)
        for _ in range(count):
            z = random_point(beta.total, ctx.rng)
            worst = max(worst, float(np.linalg.norm(linking_map(m_beta, z, ctx.cfg) - np.eye(6))))
        return ok(worst, ctx.tol, count)

    def symplectic_members(ctx: RunContext) -> Report:
        t_j = tensor_from_matrix(
            s, lambda z: J6, samples=20, rng=ctx.rng, cfg=ctx.cfg, tol=ctx.tol, name="sympl",
        )
        count = max(5, ctx.samples // 10)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            sym = ctx.rng.normal(size=(6, 6))
            d = expm(0.3 * J6 @ (sym + sym.T) / 2.0)
            if not invariance_group_member(s, t_j, z, d, ctx.cfg, ctx.tol):
                return Report(False, float("inf"), count, "symplectic exponential rejected")
            if invariance_group_member(s, t_j, z, 2.0 * np.eye(6), ctx.cfg, ctx.tol):
                return Report(False, float("inf"), count, "dilation accepted")
        return Report(True, 0.0, count, "")

    def splitting_degenerate(ctx: RunContext) -> Report:
        z = random_point(s.total, ctx.rng)
        rep = splitting_report(s, k6, z, ctx.cfg)
        if rep["injective"] or rep["split_ok"]:
            return Report(False, 1.0, 1, f"diagnostics {rep}")
        return expect_raises(SplittingFailure, lambda: connection_from_k(s, k6, ctx.cfg, probes=[z]))

    def naturality_transfer(ctx: RunContext) -> Report:
        n = max(20, ctx.samples // 2)
        for lifted, ground, want in ((gt, g2, False), (null6, None, True)):
            top = is_lambda_natural(s, lifted, n, ctx.rng, ctx.cfg, ctx.tol)
            mid = is_lambda_natural(beta, lifted, n, ctx.rng, ctx.cfg, ctx.tol)
            if top.passed is not want or mid.passed is not want:
                return Report(False, float("inf"), n, f"{lifted.name}: expected {want}")
            if ground is not None:
                ground_rep = is_lambda_natural(lm, ground, n, ctx.rng, ctx.cfg, ctx.tol)
                if ground_rep.passed is not want:
                    return Report(False, float("inf"), n, "ground verdict diverges")
        return Report(True, 0.0, n, "")

    checks = (
        Check("rigidity", "frames are carried along fibers by the identity representation", "structure", rigidity_run(s)),
        Check("dimension-identity", "dim N = dim (R^2 x GL(2)) + dim GL(2), free action", "structure", dimension_run(s, 0)),
        Check("fiber-transitivity", "the second frame absorbs any fiber motion", "structure", transitivity_run(s)),
        Check("roundtrip-tensor", "tensor to matrix map and back is the identity", "correspondence", roundtrip_tensor_run(s, gt)),
        Check("roundtrip-matrix", "a constant matrix map is equivariant and corresponds to a tensor", "correspondence", roundtrip_matrix_run(s, lambda z: J6)),
        Check("rep-invariance", "representations are constant along fibers", "correspondence", invariance_run(s, gt)),
        Check("bundle-metric-rep", "the lifted dot metric has three equal frame-gram blocks", "correspondence", rep_formula),
        Check("section-morphism", "pinning the second frame maps the one-point-fiber space in", "morphisms", morphism_run(m_beta)),
        Check("section-cocycle", "the section morphism satisfies the cocycle law", "morphisms", cocycle_run(m_beta)),
        Check("section-pullback", "representations agree through the section", "morphisms", pullback_law_run(m_beta, gt)),
        Check("section-linking-identity", "the section linking map is the identity", "morphisms", linking_is_identity),
        Check("symplectic-invariance-group", "symplectic exponentials preserve the pairing form, dilations do not", "morphisms", symplectic_members),
        Check("connection-laws", "the second-frame splitting is idempotent, vertical, equivariant", "connections", connection_run(conn)),
        Check("coframe-duality", "lifted frames and fundamental fields are dual to the coframes", "connections", coframe_duality_run(conn, algebra)),
        Check("theta-equivariance", "the soldering coframe is fiberwise constant", "connections", theta_equivariance_run(s)),
        Check("global-frame", "six lifts and four fundamental fields frame the ten dimensions", "connections", global_frame_run(conn, algebra)),
        Check("frame-derivative-degenerate", "the flat kernel contains the vertical space and cannot split", "connections", splitting_degenerate),
        Check("naturality-transfer", "lifted-metric naturality matches the ground metric verdict", "naturality", naturality_transfer),
    )

    return CatalogEntry(
        name="frame-conn-2",
        summary="frames of the plane frame space; the group shuffles fibers without moving frames",
        checks=checks,
        objects={
            "sspace": s,
            "beta": beta,
            "ground": lm,
            "bundle_metric": gt,
            "connection": conn,
            "morphisms": {"section": m_beta},
            "overid_sweeps": [(m_beta, gt)],
        },
    )


def _fiber_basis(z: PointOn) -> np.ndarray:
    u, b = z.coords[2:6].reshape(2, 2), z.coords[6:10].reshape(2, 2)
    binv = np.linalg.inv(b)
    rows = []
    for e in _E:
        rows.append(np.concatenate([np.zeros(2), (-(u @ e @ binv)).ravel(), e.ravel()]))
    return np.array(rows)


def entries() -> list[CatalogEntry]:
    return [build_frame_conn()]
