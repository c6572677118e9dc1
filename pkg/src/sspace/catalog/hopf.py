"""Circle-bundle instances built on quaternions: the Hopf fibration S^3
over S^2 and frame spaces adapted to its one-parameter family of bundle
metrics.

The main instance carries a base-sphere frame pair, a scaled fiber leg,
and a circle slot absorbed by the projection, so one frame space per
fiber-length normalization; members with different normalizations link
into an atlas.  A second instance drops the circle slot and reads the
same metrics over S^3 directly.
"""

from __future__ import annotations

import numpy as np

from ..connections import connection_from_bases, lifted_metric
from ..core import SSpace, block_structure_test, extract_base_change, frame_matrix
from ..geometry import (
    Manifold,
    PointOn,
    SmoothMap,
    Tangent,
    Tensor02Field,
    ambient_dot_metric,
    random_point,
    sphere,
)
from ..groups import AlgebraElement, circle, orthogonal, product_group, sign_group
from ..morphisms import SSpaceMorphism, linking_map
from ..naturality import Atlas, is_atlas_fibration_natural, validate_atlas
from ..numerics import solve_least_squares
from ..report import Report
from .base import (
    CatalogEntry,
    Check,
    RunContext,
    cocycle_run,
    connection_run,
    dimension_run,
    expect_failure,
    fibration_natural_run,
    global_frame_run,
    invariance_run,
    morphism_run,
    natural_run,
    ok,
    projection_map,
    pullback_law_run,
    rep_value_run,
    rigidity_run,
    roundtrip_tensor_run,
    submersion_run,
    transitivity_run,
)
from .tangent import orthonormal_frame

IQ = np.array([0.0, 1.0, 0.0, 0.0])
JQ = np.array([0.0, 0.0, 1.0, 0.0])
KQ = np.array([0.0, 0.0, 0.0, 1.0])


def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    w1, x1, y1, z1 = a
    w2, x2, y2, z2 = b
    return np.array(
        [
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        ]
    )


def qconj(a: np.ndarray) -> np.ndarray:
    return np.array([a[0], -a[1], -a[2], -a[3]])


def hopf_point(q: np.ndarray) -> np.ndarray:
    """The Hopf projection q i q^-1 of a unit quaternion, as a 3-vector."""
    return qmul(qmul(q, IQ), qconj(q))[1:]


def hopf_push(q: np.ndarray, dq: np.ndarray) -> np.ndarray:
    return (qmul(qmul(dq, IQ), qconj(q)) + qmul(qmul(q, IQ), qconj(dq)))[1:]


def horizontal_quat_lift(q: np.ndarray, w: np.ndarray) -> np.ndarray:
    """The lift of w tangent at hopf_point(q) orthogonal to the fiber circle."""
    m = qmul(qmul(qconj(q), np.concatenate([[0.0], w])), q)[1:]
    return qmul(q, np.array([0.0, 0.0, -m[2] / 2.0, m[1] / 2.0]))


def hopf_section_quat(p: np.ndarray) -> np.ndarray:
    """A unit quaternion whose conjugation rotates the first axis onto p."""
    if 1.0 + p[0] < 1e-10:
        return KQ.copy()
    q = np.concatenate([[1.0 + p[0]], np.cross(np.array([1.0, 0.0, 0.0]), p)])
    return q / np.linalg.norm(q)


def _embed2(g: np.ndarray) -> np.ndarray:
    return np.array([g[0], g[1], 0.0, 0.0])


def _left_rows(q: np.ndarray, u: np.ndarray, tail: int) -> list[np.ndarray]:
    """Tangent rows rotating the whole configuration: q by a left unit
    translation, the base-sphere frame pair by the induced rotation."""
    rows = []
    for wq, wv in ((IQ, np.array([1.0, 0, 0])), (JQ, np.array([0.0, 1, 0])), (KQ, np.array([0.0, 0, 1]))):
        rows.append(
            np.concatenate(
                [qmul(wq, q), 2.0 * np.cross(wv, u[0]), 2.0 * np.cross(wv, u[1]), np.zeros(tail)]
            )
        )
    return rows


def hopf_metric(base: Manifold, length_fn, name: str) -> Tensor02Field:
    """Pulled-back round metric plus length_fn(base point) times the
    squared fiber component."""

    def ev(p: PointOn, a: Tangent, b: Tangent) -> float:
        q = p.coords
        qi = qmul(q, IQ)
        horiz = hopf_push(q, a.vec) @ hopf_push(q, b.vec)
        return float(horiz + length_fn(hopf_point(q)) * (a.vec @ qi) * (b.vec @ qi))

    return Tensor02Field(base, ev, name=name, symmetric=True)


# ---------------------------------------------------------------------------
# the main frame space: base frames, a scaled fiber leg, and a circle slot


def hopf_total(width: float, name: str) -> Manifold:
    v_abs = 1.0 / np.sqrt(width)

    def contains(x: np.ndarray, tol: float = 1e-6) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (13,) or not np.all(np.isfinite(x)):
            return False
        q, u1, u2, v, g = x[:4], x[4:7], x[7:10], x[10], x[11:13]
        p = hopf_point(q)
        lim = 10 * tol
        return (
            abs(q @ q - 1.0) <= lim
            and abs(g @ g - 1.0) <= lim
            and abs(abs(v) - v_abs) <= lim
            and abs(u1 @ u1 - 1.0) <= lim
            and abs(u2 @ u2 - 1.0) <= lim
            and abs(u1 @ u2) <= lim
            and abs(u1 @ p) <= lim
            and abs(u2 @ p) <= lim
        )

    def tangent_basis(x: np.ndarray) -> np.ndarray:
        q, u = x[:4], x[4:10].reshape(2, 3)
        rows = _left_rows(q, u, 3)
        rows.append(np.concatenate([np.zeros(4), u[1], -u[0], np.zeros(3)]))
        rows.append(np.concatenate([np.zeros(11), [-x[12], x[11]]]))
        return np.array(rows)

    def sampler(rng: np.random.Generator) -> np.ndarray:
        q = rng.standard_normal(4)
        q /= np.linalg.norm(q)
        u1, u2 = orthonormal_frame(hopf_point(q))
        th = rng.uniform(0.0, 2.0 * np.pi)
        u1, u2 = np.cos(th) * u1 + np.sin(th) * u2, -np.sin(th) * u1 + np.cos(th) * u2
        if rng.random() < 0.5:
            u2 = -u2
        v = v_abs if rng.random() < 0.5 else -v_abs
        ph = rng.uniform(0.0, 2.0 * np.pi)
        return np.concatenate([q, u1, u2, [v], [np.cos(ph), np.sin(ph)]])

    return Manifold(name=name, dim=5, ambient_dim=13, contains=contains,
                    tangent_basis=tangent_basis, sampler=sampler)


def hopf_sspace(
    width: float = 1.0,
    mu: np.ndarray | None = None,
    base: Manifold | None = None,
    name: str = "hopf",
) -> SSpace:
    grp = product_group([orthogonal(2), sign_group(), circle()], name="O(2) x O(1) x U(1)")
    total = hopf_total(width, f"{name}-total")
    base = sphere(3) if base is None else base
    v_abs = 1.0 / np.sqrt(width)

    def psi_fn(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return qmul(x[:4], _embed2(x[11:13]))

    # right multiplication by i in ambient quaternion coordinates
    ri = np.array([[0.0, -1, 0, 0], [1.0, 0, 0, 0], [0.0, 0, 0, 1], [0.0, 0, -1, 0]])

    def psi_jac(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        q, g = x[:4], x[11:13]
        jac = np.zeros((4, 13))
        jac[:, :4] = g[0] * np.eye(4) + g[1] * ri
        jac[:, 11] = q
        jac[:, 12] = ri @ q
        return jac

    psi = SmoothMap(total, base, psi_fn, jacobian=psi_jac, name="twist-out")

    def action(z: PointOn, val) -> PointOn:
        a, b, h = val
        q, u = z.coords[:4], z.coords[4:10].reshape(2, 3)
        hq = np.array([h[0, 0], h[1, 0], 0.0, 0.0])
        return PointOn(
            total,
            np.concatenate(
                [
                    qmul(q, hq),
                    (np.asarray(a, dtype=float).T @ u).ravel(),
                    [z.coords[10] * float(b[0, 0])],
                    np.asarray(h, dtype=float).T @ z.coords[11:13],
                ]
            ),
        )

    def frames(z: PointOn) -> np.ndarray:
        u, v = z.coords[4:10].reshape(2, 3), z.coords[10]
        big_q = qmul(z.coords[:4], _embed2(z.coords[11:13]))
        qi = qmul(big_q, IQ)
        e1 = horizontal_quat_lift(big_q, u[0])
        e2 = horizontal_quat_lift(big_q, u[1])
        if mu is not None:
            e1 = e1 - float(mu @ u[0]) * qi
            e2 = e2 - float(mu @ u[1]) * qi
        return np.array([e1, e2, v * qi])

    def fiber_section(p: PointOn) -> PointOn:
        u1, u2 = orthonormal_frame(hopf_point(p.coords))
        return PointOn(total, np.concatenate([p.coords, u1, u2, [v_abs], [1.0, 0.0]]))

    def witness(z: PointOn, zbar: PointOn):
        q, u, v = z.coords[:4], z.coords[4:10].reshape(2, 3), z.coords[10]
        qb, ub, vb = zbar.coords[:4], zbar.coords[4:10].reshape(2, 3), zbar.coords[10]
        hq = qmul(qconj(q), qb)
        return (
            u @ ub.T,
            np.array([[vb / v]]),
            np.array([[hq[0], -hq[1]], [hq[1], hq[0]]]),
        )

    return SSpace(
        name=name,
        total=total,
        base=base,
        group=grp,
        psi=psi,
        action=action,
        frames=frames,
        fiber_section=fiber_section,
        fiber_split=(11, 13),
        witness_finder=witness,
        analytic=True,
    )


def hopf_connection(s: SSpace):
    def h_basis(z: PointOn) -> np.ndarray:
        return np.array(_left_rows(z.coords[:4], z.coords[4:10].reshape(2, 3), 3))

    def v_basis(z: PointOn) -> np.ndarray:
        q, u, g = z.coords[:4], z.coords[4:10].reshape(2, 3), z.coords[11:13]
        return np.array(
            [
                np.concatenate([np.zeros(4), u[1], -u[0], np.zeros(3)]),
                np.concatenate([qmul(q, IQ), np.zeros(7), [g[1], -g[0]]]),
            ]
        )

    return connection_from_bases(s, h_basis, v_basis, name="left-translation-splitting")


# ---------------------------------------------------------------------------
# the underlying circle bundle S^3 -> S^2 with its standard connection


def circle_bundle_sspace(base: Manifold | None = None) -> SSpace:
    total = sphere(3)
    base = sphere(2) if base is None else base
    grp = circle()

    def psi_jac(x: np.ndarray) -> np.ndarray:
        cols = [hopf_push(x, e) for e in np.eye(4)]
        return np.array(cols).T

    psi = SmoothMap(total, base, hopf_point, jacobian=psi_jac, name="hopf-map")

    def action(z: PointOn, h) -> PointOn:
        h = np.asarray(h, dtype=float)
        return PointOn(total, qmul(z.coords, np.array([h[0, 0], h[1, 0], 0.0, 0.0])))

    def frames(z: PointOn) -> np.ndarray:
        q = z.coords
        return np.array([hopf_push(q, qmul(q, JQ)), hopf_push(q, qmul(q, KQ))])

    def fiber_section(p: PointOn) -> PointOn:
        return PointOn(total, hopf_section_quat(p.coords))

    def witness(z: PointOn, zbar: PointOn) -> np.ndarray:
        hq = qmul(qconj(z.coords), zbar.coords)
        return np.array([[hq[0], -hq[1]], [hq[1], hq[0]]])

    return SSpace(
        name="hopf-circle-bundle",
        total=total,
        base=base,
        group=grp,
        psi=psi,
        action=action,
        frames=frames,
        fiber_section=fiber_section,
        fiber_split=None,
        witness_finder=witness,
        analytic=True,
    )


def circle_bundle_connection(s: SSpace):
    def h_basis(z: PointOn) -> np.ndarray:
        q = z.coords
        return np.array([qmul(q, JQ), qmul(q, KQ)])

    def v_basis(z: PointOn) -> np.ndarray:
        return qmul(z.coords, IQ).reshape(1, 4)

    return connection_from_bases(s, h_basis, v_basis, name="fiber-orthogonal")


def _width_link(src: SSpace, tgt: SSpace, factor: float) -> SSpaceMorphism:
    scale = np.ones(13)
    scale[10] = factor

    def f_fn(x: np.ndarray) -> np.ndarray:
        return np.asarray(x, dtype=float) * scale

    return SSpaceMorphism(
        source=src,
        target=tgt,
        f=SmoothMap(src.total, tgt.total, f_fn, jacobian=lambda x: np.diag(scale), name="rescale-leg"),
        tau=lambda val: val,
        name=f"width-link-{factor:g}",
    )


def build_hopf() -> CatalogEntry:
    s3 = sphere(3)
    s1 = hopf_sspace(width=1.0, base=s3, name="hopf")
    s2 = hopf_sspace(width=0.25, base=s3, name="hopf-narrow")
    mu0 = np.array([0.3, -0.2, 0.4])
    s_mu = hopf_sspace(width=1.0, mu=mu0, base=s3, name="hopf-retwisted")

    t2 = hopf_metric(s3, lambda p: 2.0, "bundle-metric-2")
    t_height = hopf_metric(s3, lambda p: 1.0 + 0.5 * p[2], "bundle-metric-height")

    m12 = _width_link(s1, s2, 2.0)
    m21 = _width_link(s2, s1, 0.5)
    atlas = Atlas(members=(s1, s2), links={(0, 1): m12, (1, 0): m21}, name="widths")

    conn = hopf_connection(s1)
    algebra = [AlgebraElement(s1.group, val) for val in s1.group.algebra_basis]

    sb = circle_bundle_sspace()
    conn_b = circle_bundle_connection(sb)
    algebra_b = [AlgebraElement(sb.group, val) for val in sb.group.algebra_basis]
    round2 = ambient_dot_metric(sb.base, name="round")
    lifted = lifted_metric(conn_b, round2, algebra_b)

    def width_linking_value(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(5, ctx.samples // 10)
        expected = np.diag([1.0, 1.0, 2.0])
        for _ in range(count):
            z = random_point(s1.total, ctx.rng)
            worst = max(worst, float(np.linalg.norm(linking_map(m12, z, ctx.cfg) - expected)))
        return ok(worst, ctx.tol, count)

    def retwist_blocks(ctx: RunContext) -> Report:
        worst = 0.0
        for _ in range(50):
            z = random_point(s1.total, ctx.rng)
            u, v = z.coords[4:10].reshape(2, 3), z.coords[10]
            res = solve_least_squares(frame_matrix(s1, z), frame_matrix(s_mu, z), ctx.cfg)
            d = res.solution
            dev = max(
                float(np.linalg.norm(d[:2, :2] - np.eye(2))),
                float(np.linalg.norm(d[:2, 2])),
                abs(d[2, 2] - 1.0),
                abs(d[2, 0] - (-(mu0 @ u[0]) / v)),
                abs(d[2, 1] - (-(mu0 @ u[1]) / v)),
            )
            worst = max(worst, dev)
        return ok(worst, ctx.tolerance(True), 50)

    def atlas_valid(ctx: RunContext) -> Report:
        return validate_atlas(atlas, max(5, ctx.samples // 10), ctx.rng, ctx.cfg, ctx.tol)

    def atlas_fib_true(ctx: RunContext) -> Report:
        return is_atlas_fibration_natural(atlas, t2, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)

    def atlas_fib_false(ctx: RunContext) -> Report:
        return expect_failure(
            is_atlas_fibration_natural(atlas, t_height, ctx.samples, ctx.rng, ctx.cfg, ctx.tol),
            ctx.tol,
        )

    checks = (
        Check("rigidity", "frames move by the paired rotation and sign representation", "structure", rigidity_run(s1)),
        Check("retwisted-rigidity", "connection-shifted frames keep the same representation", "structure", rigidity_run(s_mu)),
        Check("dimension-identity", "dim N = dim S^3 + dim (O(2) x O(1) x U(1)), free action", "structure", dimension_run(s1, 0)),
        Check("fiber-transitivity", "the three slots jointly absorb any fiber motion", "structure", transitivity_run(s1)),
        Check("roundtrip-tensor", "tensor to matrix map and back is the identity", "correspondence", roundtrip_tensor_run(s1, t2)),
        Check("rep-invariance", "representations transform by congruence with the base change", "correspondence", invariance_run(s1, t2)),
        Check("width-rep-value", "the doubled fiber length reads as diag(1, 1, 2)", "correspondence", rep_value_run(s1, t2, np.diag([1.0, 1.0, 2.0]))),
        Check("narrow-rep-value", "the quarter-width member reads the same metric as diag(1, 1, 8)", "correspondence", rep_value_run(s2, t2, np.diag([1.0, 1.0, 8.0]))),
        Check("width-link-morphism", "rescaling the fiber leg links the two normalizations", "morphisms", morphism_run(m12)),
        Check("width-link-cocycle", "the width link satisfies the cocycle law", "morphisms", cocycle_run(m12)),
        Check("width-linking-value", "the width linking map is diag(1, 1, 2)", "morphisms", width_linking_value),
        Check("width-pullback", "representations pull back by congruence with the width link", "morphisms", pullback_law_run(m12, t2)),
        Check("retwist-blocks", "shifting the horizontal space adds only a lower frame-change row", "morphisms", retwist_blocks),
        Check("connection-laws", "the left-translation splitting is idempotent, vertical, equivariant", "connections", connection_run(conn)),
        Check("global-frame", "three lifts and two fundamental fields frame the five dimensions", "connections", global_frame_run(conn, algebra)),
        Check("bundle-connection-laws", "the fiber-orthogonal splitting on S^3 is a connection", "connections", connection_run(conn_b)),
        Check("riemannian-submersion", "the lifted round metric makes the projection a Riemannian submersion", "connections", submersion_run(conn_b, round2, lifted)),
        Check("bundle-global-frame", "two lifts and the fiber field frame the three-sphere", "connections", global_frame_run(conn_b, algebra_b)),
        Check("width-natural", "constant fiber length gives a constant representation", "naturality", natural_run(s1, t2, True)),
        Check("height-not-natural", "height-dependent fiber length is not constant", "naturality", natural_run(s1, t_height, False)),
        Check("width-fiber-dependence", "the constant-length representation depends only on the circle slot", "naturality", fibration_natural_run(s1, t2, True)),
        Check("height-fiber-dependence-fails", "height-dependent length leaks base-point dependence", "naturality", fibration_natural_run(s1, t_height, False)),
        Check("atlas-valid", "the width links form a consistent two-member atlas", "naturality", atlas_valid),
        Check("atlas-fibration-natural", "constant fiber length is fibration-natural in every member", "naturality", atlas_fib_true),
        Check("atlas-fibration-fails", "height-dependent length fails in every member", "naturality", atlas_fib_false),
        Check("bundle-rigidity", "the circle bundle frames rotate at twice the fiber angle", "structure", rigidity_run(sb)),
        Check("bundle-dimension", "dim S^3 = dim S^2 + dim U(1), free action", "structure", dimension_run(sb, 0)),
        Check("bundle-transitivity", "the circle carries any fiber point to the section point", "structure", transitivity_run(sb)),
    )

    return CatalogEntry(
        name="hopf",
        summary="frame spaces over the Hopf fibration with scaled fiber legs and a width atlas",
        checks=checks,
        objects={
            "sspace": s1,
            "narrow": s2,
            "retwisted": s_mu,
            "circle_bundle": sb,
            "metric": t2,
            "height_metric": t_height,
            "connection": conn,
            "bundle_connection": conn_b,
            "atlas": atlas,
            "morphisms": {"width": m12},
            "overid_sweeps": [(m12, t2)],
            "retwist": (s1, s_mu, mu0),
        },
    )


# ---------------------------------------------------------------------------
# hopf-frame-algebra: the same frames over S^3 without the circle slot.
# The frame pair is stored as an O(2) matrix applied to a fixed reference
# frame at the foot point, so the fiber coordinates are unconstrained and
# the total space is a plain product.


def _reference_pair(q: np.ndarray) -> np.ndarray:
    u1, u2 = orthonormal_frame(hopf_point(q))
    return np.array([u1, u2])


def frame_algebra_total() -> Manifold:
    def contains(x: np.ndarray, tol: float = 1e-6) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (9,) or not np.all(np.isfinite(x)):
            return False
        q, r, w = x[:4], x[4:8].reshape(2, 2), x[8]
        lim = 10 * tol
        return (
            abs(q @ q - 1.0) <= lim
            and abs(abs(w) - 1.0) <= lim
            and float(np.linalg.norm(r.T @ r - np.eye(2))) <= lim
        )

    def tangent_basis(x: np.ndarray) -> np.ndarray:
        q, r = x[:4], x[4:8].reshape(2, 2)
        j2 = np.array([[0.0, -1.0], [1.0, 0.0]])
        rows = [np.concatenate([qmul(wq, q), np.zeros(5)]) for wq in (IQ, JQ, KQ)]
        rows.append(np.concatenate([np.zeros(4), (r @ j2).ravel(), [0.0]]))
        return np.array(rows)

    def sampler(rng: np.random.Generator) -> np.ndarray:
        q = rng.standard_normal(4)
        q /= np.linalg.norm(q)
        th = rng.uniform(0.0, 2.0 * np.pi)
        r = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
        if rng.random() < 0.5:
            r = r @ np.diag([1.0, -1.0])
        return np.concatenate([q, r.ravel(), [1.0 if rng.random() < 0.5 else -1.0]])

    return Manifold(name="Hopf-adapted frames", dim=4, ambient_dim=9,
                    contains=contains, tangent_basis=tangent_basis, sampler=sampler)


def frame_algebra_sspace(base: Manifold | None = None) -> SSpace:
    grp = product_group([orthogonal(2), sign_group()], name="O(2) x O(1)")
    total = frame_algebra_total()
    base = sphere(3) if base is None else base
    psi = projection_map(total, base, name="foot-quaternion")

    def action(z: PointOn, val) -> PointOn:
        a, b = val
        r = z.coords[4:8].reshape(2, 2)
        return PointOn(
            total,
            np.concatenate(
                [z.coords[:4], (np.asarray(a, dtype=float).T @ r).ravel(),
                 [z.coords[8] * float(b[0, 0])]]
            ),
        )

    def frames(z: PointOn) -> np.ndarray:
        q, r, w = z.coords[:4], z.coords[4:8].reshape(2, 2), z.coords[8]
        u = r @ _reference_pair(q)
        return np.array(
            [
                horizontal_quat_lift(q, u[0]),
                horizontal_quat_lift(q, u[1]),
                w * qmul(q, IQ),
            ]
        )

    def fiber_section(p: PointOn) -> PointOn:
        return PointOn(total, np.concatenate([p.coords, np.eye(2).ravel(), [1.0]]))

    def witness(z: PointOn, zbar: PointOn):
        r = z.coords[4:8].reshape(2, 2)
        rb = zbar.coords[4:8].reshape(2, 2)
        return (r @ rb.T, np.array([[zbar.coords[8] * z.coords[8]]]))

    return SSpace(
        name="hopf-frame-algebra",
        total=total,
        base=base,
        group=grp,
        psi=psi,
        action=action,
        frames=frames,
        fiber_section=fiber_section,
        fiber_split=(4, 9),
        witness_finder=witness,
        analytic=True,
    )


def build_frame_algebra() -> CatalogEntry:
    s3 = sphere(3)
    s = frame_algebra_sspace(base=s3)
    t2 = hopf_metric(s3, lambda p: 2.0, "bundle-metric-2")
    t_height = hopf_metric(s3, lambda p: 1.0 + 0.5 * p[2], "bundle-metric-height")

    def block_split(ctx: RunContext) -> Report:
        return block_structure_test(s, 2, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)

    def base_change_blocks(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(5, ctx.samples // 5)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            a = ctx.rng.standard_normal((2, 2))
            a, _ = np.linalg.qr(a)
            b = np.array([[1.0 if ctx.rng.random() < 0.5 else -1.0]])
            l_mat = extract_base_change(s, (a, b), z, ctx.cfg)
            expected = np.zeros((3, 3))
            expected[:2, :2] = a
            expected[2, 2] = b[0, 0]
            worst = max(worst, float(np.linalg.norm(l_mat - expected)))
        return ok(worst, ctx.tol, count)

    checks = (
        Check("rigidity", "frames move by the paired rotation and sign representation", "structure", rigidity_run(s)),
        Check("dimension-identity", "dim N = dim S^3 + dim (O(2) x O(1)), free action", "structure", dimension_run(s, 0)),
        Check("fiber-transitivity", "rotation and sign absorb any fiber motion", "structure", transitivity_run(s)),
        Check("base-change-blocks", "the extracted base change is diag(a, b) slot by slot", "structure", base_change_blocks),
        Check("block-structure", "base changes split into orthogonal blocks of sizes 2 and 1", "structure", block_split),
        Check("roundtrip-tensor", "tensor to matrix map and back is the identity", "correspondence", roundtrip_tensor_run(s, t2)),
        Check("rep-invariance", "representations transform by congruence with the base change", "correspondence", invariance_run(s, t2)),
        Check("width-rep-value", "the doubled fiber length reads as diag(1, 1, 2)", "naturality", rep_value_run(s, t2, np.diag([1.0, 1.0, 2.0]))),
        Check("width-natural", "constant fiber length gives a constant representation", "naturality", natural_run(s, t2, True)),
        Check("height-not-natural", "height-dependent fiber length is not constant", "naturality", natural_run(s, t_height, False)),
        Check("width-fiber-dependence", "the constant-length representation depends only on the frame slots", "naturality", fibration_natural_run(s, t2, True)),
        Check("height-fiber-dependence-fails", "height-dependent length leaks base-point dependence", "naturality", fibration_natural_run(s, t_height, False)),
    )

    return CatalogEntry(
        name="hopf-frame-algebra",
        summary="Hopf-adapted frames over the three-sphere; rotation and sign act blockwise",
        checks=checks,
        objects={"sspace": s, "metric": t2, "height_metric": t_height, "overid_sweeps": []},
    )


def entries() -> list[CatalogEntry]:
    return [build_hopf(), build_frame_algebra()]
