import numpy as np
import pytest

from sspace.core import matrix_rep
from sspace.errors import MissingFiberSplit, RigidityLost, SignatureMismatch
from sspace.geometry import PointOn, random_point
from sspace.morphisms import verify_morphism
from sspace.naturality import (
    constant_signature_sspace,
    depends_only_on_split,
    frame_twist,
    is_atlas_natural,
    is_fibration_natural,
    is_lambda_natural,
    is_weak_natural,
    validate_atlas,
)

# adapted-frame oracles for the plane bundle: with u orthonormal and xi = (1, 0)
# the round bundle form reads as the identity and the weighted one picks up
# (I + xi xi^T) / (1 + |xi|^2) = diag(1, 1/2) in the fiber block
SASAKI_AT_PINNED = np.eye(4)
CG_AT_PINNED = np.block(
    [
        [np.eye(2), np.zeros((2, 2))],
        [np.zeros((2, 2)), np.diag([1.0, 0.5])],
    ]
)


def _pinned_point(s):
    coords = np.array([0.3, -0.7, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0])
    return PointOn(s.total, coords)


def test_bundle_metric_reps_at_pinned_point(reg):
    objs = reg["tangent-flat-2"].objects
    s = objs["sspace"]
    z = _pinned_point(s)
    assert np.allclose(matrix_rep(s, objs["sasaki"], z), SASAKI_AT_PINNED, atol=1e-7)
    assert np.allclose(matrix_rep(s, objs["cheeger_gromoll"], z), CG_AT_PINNED, atol=1e-7)


def test_lambda_naturality_with_witness(reg, rng_for):
    objs = reg["oframes-flat-2"].objects
    s = objs["sspace"]
    rng = rng_for("nat:oframes")
    rep = is_lambda_natural(s, objs["triple"], 30, rng)
    assert rep.passed
    assert np.allclose(rep.witness_matrix, 3.0 * np.eye(2), atol=1e-7)
    bad = is_lambda_natural(s, objs["anisotropic"], 30, rng)
    assert not bad.passed
    assert bad.max_deviation > 1e-3


def test_atlas_validation_and_links(reg, rng_for):
    atlas = reg["hopf"].objects["atlas"]
    rng = rng_for("nat:hopf-atlas")
    assert validate_atlas(atlas, 10, rng).passed
    m = atlas.link(0, 1)
    assert m.source is atlas.members[0]
    assert m.target is atlas.members[1]
    assert verify_morphism(m, 10, rng).passed


def test_atlas_naturality_strict_and_weak(reg, rng_for):
    objs = reg["punctured-2"].objects
    atlas, diag = objs["atlas"], objs["diag"]
    rng = rng_for("nat:punctured-atlas")
    strict = is_atlas_natural(atlas, diag, 25, rng)
    assert not strict.passed
    assert strict.max_deviation > 1e-3
    weak = is_weak_natural(atlas, diag, 25, rng)
    assert weak.passed
    assert weak.detail.startswith("member 0")
    assert np.allclose(weak.witness_matrix, np.diag([1.0, 2.0]), atol=1e-7)


def test_constant_signature_frames(reg, rng_for):
    objs = reg["minkowski-p51"].objects
    rng = rng_for("nat:minkowski")
    plane = objs["build_plane"](rng)
    for _ in range(10):
        z = random_point(plane.total, rng)
        assert np.allclose(matrix_rep(plane, objs["lorentz"], z), np.diag([1.0, -1.0]), atol=1e-7)
    rank_one = objs["build_rank_one"](rng)
    z = random_point(rank_one.total, rng)
    assert np.allclose(matrix_rep(rank_one, objs["rank_one"], z), np.diag([1.0, 0.0]), atol=1e-7)


def test_varying_signature_is_rejected(reg, rng_for):
    objs = reg["minkowski-p51"].objects
    base = objs["lorentz"].manifold
    with pytest.raises(SignatureMismatch):
        constant_signature_sspace(base, objs["sign_flipping"], positives=1, rank=2, rng=rng_for("nat:vary"))


def test_fibration_naturality_needs_fiber_split(reg, rng_for):
    objs = reg["hopf"].objects
    bundle = objs["circle_bundle"]
    assert bundle.fiber_split is None
    with pytest.raises(MissingFiberSplit):
        is_fibration_natural(bundle, objs["metric"], 10, rng_for("nat:missing"))


def test_fibration_naturality_on_hopf(reg, rng_for):
    objs = reg["hopf"].objects
    s = objs["sspace"]
    rng = rng_for("nat:hopf-fib")
    assert is_fibration_natural(s, objs["metric"], 30, rng).passed
    rep = is_fibration_natural(s, objs["height_metric"], 30, rng)
    assert not rep.passed


def test_empty_split_degenerates_to_constancy(reg, rng_for):
    objs = reg["punctured-2"].objects
    s = objs["sspace"]
    rng = rng_for("nat:empty-split")
    dim = s.total.ambient_dim
    assert depends_only_on_split(s, objs["planted"], (dim, dim), 25, rng).passed
    assert not depends_only_on_split(s, objs["poly"], (dim, dim), 25, rng).passed


def test_frame_twist_guards_rigidity(reg, rng_for):
    objs = reg["oframes-flat-2"].objects
    s = objs["sspace"]
    rng = rng_for("nat:twist")
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    twisted = frame_twist(s, lambda z: np.eye(2) + 0.5 * rot, 20, rng, name="tilted")
    assert is_lambda_natural(twisted, objs["metric"], 20, rng).passed

    def fiber_varying(z):
        return np.eye(2) + 0.2 * z.coords[2] * np.diag([1.0, 0.0])

    with pytest.raises(RigidityLost):
        frame_twist(s, fiber_varying, 20, rng, name="broken")
