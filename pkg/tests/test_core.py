import dataclasses

import numpy as np
import pytest

from sspace.core import (
    act,
    admits_constant_rep,
    block_structure_test,
    check_invariance,
    dimension_identity,
    extract_base_change,
    frame_matrix,
    matrix_rep,
    random_fiber_mates,
    stabilizer_dim,
    tensor_from_matrix,
    verify_rigidity,
)
from sspace.errors import InvarianceViolation
from sspace.geometry import PointOn, constant_matrix_tensor, random_point


def test_linear_frames_base_change_is_the_acting_matrix(reg, rng_for):
    # on the full frame space the extracted base change equals the group value
    s = reg["lm-flat-2"].objects["sspace"]
    rng = rng_for("core:lm-base-change")
    a = np.array([[1.0, 2.0], [0.5, 3.0]])
    for _ in range(10):
        z = random_point(s.total, rng)
        assert np.allclose(extract_base_change(s, a, z), a, atol=1e-9)


def test_matrix_rep_is_gram_matrix_of_frames(reg, rng_for):
    s = reg["lm-flat-2"].objects["sspace"]
    g = reg["lm-flat-2"].objects["metric"]
    rng = rng_for("core:lm-gram")
    for _ in range(10):
        z = random_point(s.total, rng)
        f = np.asarray(s.frames(z), dtype=float)
        assert np.allclose(matrix_rep(s, g, z), f @ f.T, atol=1e-10)


def test_rigidity_and_fiber_mates(reg, rng_for):
    s = reg["lm-flat-2"].objects["sspace"]
    rng = rng_for("core:rigidity")
    assert verify_rigidity(s, 20, rng).passed
    z, za, a = random_fiber_mates(s, rng)
    assert np.allclose(s.psi.eval(z).coords, s.psi.eval(za).coords, atol=1e-9)


def test_tensor_from_matrix_rejects_non_equivariant_maps(reg, rng_for):
    s = reg["lm-flat-2"].objects["sspace"]
    rng = rng_for("core:reject")
    with pytest.raises(InvarianceViolation):
        tensor_from_matrix(s, lambda z: np.eye(2), samples=20, rng=rng)


def test_tensor_from_matrix_round_trip(reg, rng_for):
    s = reg["lm-flat-2"].objects["sspace"]
    rng = rng_for("core:roundtrip")
    x = np.array([[1.5, 0.25], [0.25, -0.75]])

    def rep(z):
        f = np.asarray(s.frames(z), dtype=float)
        return f @ x @ f.T

    t = tensor_from_matrix(s, rep, samples=20, rng=rng)
    for _ in range(20):
        z = random_point(s.total, rng)
        assert np.allclose(matrix_rep(s, t, z), rep(z), atol=1e-8)


def test_check_invariance_flags_fiber_scaled_frames(reg, rng_for):
    s = reg["lm-flat-2"].objects["sspace"]
    g = reg["lm-flat-2"].objects["metric"]
    rng = rng_for("core:planted")

    def scale(z):
        return 1.0 + 0.1 * np.sin(z.coords[2])

    twisted = dataclasses.replace(s, frames=lambda z: scale(z) * np.asarray(s.frames(z)), name="twisted")
    rep = check_invariance(s, lambda z: matrix_rep(twisted, g, z), 40, rng)
    assert not rep.passed
    assert rep.max_deviation > 1e-3


def test_admits_constant_rep(reg, rng_for):
    s = reg["oframes-flat-2"].objects["sspace"]
    rng = rng_for("core:admits")
    assert admits_constant_rep(s, 3.0 * np.eye(2), 40, rng).passed
    assert not admits_constant_rep(s, np.diag([1.0, 2.0]), 40, rng).passed


def test_block_structure(reg, rng_for):
    s = reg["hopf-frame-algebra"].objects["sspace"]
    rng = rng_for("core:blocks")
    assert block_structure_test(s, 2, 30, rng).passed
    lm = reg["lm-flat-2"].objects["sspace"]
    assert not block_structure_test(lm, 1, 30, rng).passed


def test_stabilizer_dimensions(reg, rng_for):
    rng = rng_for("core:stab")
    lm = reg["lm-flat-2"].objects["sspace"]
    punct = reg["punctured-2"].objects["sspace"]
    assert stabilizer_dim(lm, random_point(lm.total, rng)) == 0
    assert stabilizer_dim(punct, random_point(punct.total, rng)) == 2
    assert dimension_identity(lm, 5, rng).passed
    assert dimension_identity(punct, 5, rng).passed


def test_act_returns_points_on_total(reg, rng_for):
    s = reg["hopf"].objects["sspace"]
    rng = rng_for("core:act")
    z, za, _ = random_fiber_mates(s, rng)
    assert isinstance(za, PointOn)
    assert s.total.contains(za.coords, 1e-6)


def test_constant_forms_natural_on_trivial_base_change(reg, rng_for):
    # punctured frames never move, so every constant matrix is a valid rep
    s = reg["punctured-2"].objects["sspace"]
    rng = rng_for("core:const")
    t = constant_matrix_tensor(s.base, np.array([[2.0, 1.0], [1.0, -1.0]]))
    z, za, a = random_fiber_mates(s, rng)
    assert np.allclose(extract_base_change(s, a, z), np.eye(2), atol=1e-9)
    assert np.allclose(matrix_rep(s, t, z), matrix_rep(s, t, za), atol=1e-9)
