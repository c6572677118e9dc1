import numpy as np
import pytest

from sspace.catalog.flat import flat_connection_fn, lm_flat_sspace
from sspace.catalog.frames import frame_conn_sspace
from sspace.connections import (
    connection_from_k,
    fundamental_vertical_field,
    global_frame_check,
    horizontal_lift,
    lifted_metric,
    splitting_report,
    verify_connection,
)
from sspace.core import matrix_rep
from sspace.errors import SplittingFailure
from sspace.geometry import Tangent, pushforward, random_point, random_tangent


def test_catalog_connections_satisfy_the_laws(reg, rng_for):
    for entry_name in ("lm-flat-2", "tangent-flat-2", "frame-conn-2"):
        conn = reg[entry_name].objects["connection"]
        rep = verify_connection(conn, 15, rng_for(f"conn:laws:{entry_name}"))
        assert rep.passed, f"{entry_name}: {rep.detail}"


def test_horizontal_lift_inverts_projection(reg, rng_for):
    conn = reg["hopf"].objects["bundle_connection"]
    s = conn.sspace
    rng = rng_for("conn:lift")
    for _ in range(10):
        z = random_point(s.total, rng)
        v = random_tangent(s.psi.eval(z), rng)
        lift = horizontal_lift(conn, v, z)
        assert np.allclose(conn.project(z, lift.vec), np.zeros_like(lift.vec), atol=1e-6)
        assert np.allclose(pushforward(s.psi, lift).vec, v.vec, atol=1e-5)


def test_fundamental_field_of_the_circle_generator(reg, rng_for):
    from sspace.groups import AlgebraElement

    conn = reg["hopf"].objects["bundle_connection"]
    s = conn.sspace
    rng = rng_for("conn:fund")
    x = AlgebraElement(s.group, np.array([[0.0, -1.0], [1.0, 0.0]]))
    for _ in range(5):
        z = random_point(s.total, rng)
        q = z.coords
        qi = np.array([-q[1], q[0], q[3], -q[2]])
        vec = fundamental_vertical_field(s, x, z)
        assert np.allclose(vec, qi, atol=1e-4)


def test_riemannian_submersion_metric(reg, rng_for):
    objs = reg["hopf"].objects
    conn = objs["bundle_connection"]
    s = conn.sspace
    rng = rng_for("conn:submersion")
    from sspace.geometry import ambient_dot_metric
    from sspace.groups import AlgebraElement

    round_base = ambient_dot_metric(s.base, name="round")
    algebra = [AlgebraElement(s.group, np.array([[0.0, -1.0], [1.0, 0.0]]))]
    gt = lifted_metric(conn, round_base, algebra, name="lifted-round")
    for _ in range(6):
        z = random_point(s.total, rng)
        v = random_tangent(s.psi.eval(z), rng)
        lift = horizontal_lift(conn, v, z)
        assert abs(gt.eval(z, lift, lift) - round_base.eval(v.base, v, v)) < 1e-4


def test_splitting_report_shapes(reg, rng_for):
    entry = reg["tangent-sphere2"]
    s = entry.objects["frame_space"]
    k = entry.objects["connection_fn"]
    rng = rng_for("conn:split-report")
    z = random_point(s.total, rng)
    rep = splitting_report(s, k, z)
    assert set(rep) >= {"injective", "image_ok", "split_ok", "horizontal_dim", "agrees"}
    assert rep["injective"] and rep["image_ok"] and rep["split_ok"] and rep["agrees"]
    assert rep["horizontal_dim"] == s.base.dim


def test_kernel_splitting_needs_a_complement(rng_for):
    # the flat covariant derivative of the frame-space base has the whole
    # vertical space inside its kernel, so no connection can come from it
    lm = lm_flat_sspace()
    s = frame_conn_sspace(lm)
    k6 = flat_connection_fn(lm.total)
    with pytest.raises(SplittingFailure):
        connection_from_k(s, k6, probes=[random_point(s.total, rng_for("conn:degenerate"))])


def test_global_frame_full_rank(reg, rng_for):
    from sspace.groups import AlgebraElement

    entry = reg["frame-conn-2"]
    conn = entry.objects["connection"]
    s = entry.objects["sspace"]
    basis = [np.eye(2)[:, [i]] @ np.eye(2)[[j], :] for i in range(2) for j in range(2)]
    algebra = [AlgebraElement(s.group, e) for e in basis]
    rep = global_frame_check(conn, algebra, 3, rng_for("conn:global"))
    assert rep.passed


def test_bundle_metric_block_formula(reg, rng_for):
    entry = reg["frame-conn-2"]
    s = entry.objects["sspace"]
    gt = entry.objects["bundle_metric"]
    rng = rng_for("conn:blocks")
    z = random_point(s.total, rng)
    w = z.coords[2:6].reshape(2, 2) @ z.coords[6:10].reshape(2, 2)
    blk = w.T @ w
    expected = np.zeros((6, 6))
    for k in range(3):
        expected[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = blk
    assert np.allclose(matrix_rep(s, gt, z), expected, atol=1e-4)


def test_vertical_projector_is_idempotent(reg, rng_for):
    conn = reg["hopf"].objects["connection"]
    s = conn.sspace
    rng = rng_for("conn:idem")
    z = random_point(s.total, rng)
    v = random_tangent(z, rng)
    pv = conn.project(z, v.vec)
    assert np.allclose(conn.project(z, pv), pv, atol=1e-7)
    assert np.allclose(conn.horizontal_part(z, v.vec), v.vec - pv, atol=1e-10)
