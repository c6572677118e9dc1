import numpy as np
import pytest

from sspace.errors import RankDeficient, ResidualTooLarge
from sspace.geometry import (
    PointOn,
    SmoothMap,
    Tangent,
    ambient_dot_metric,
    constant_matrix_tensor,
    euclidean,
    frame_components,
    polynomial_tensor,
    product_manifold,
    pushforward,
    random_point,
    random_tangent,
    scale_tensor,
    sphere,
)


def test_pushforward_matches_hand_value():
    e2 = euclidean(2)

    def f(v):
        return np.array([v[0] ** 2, v[1]])

    m = SmoothMap(e2, e2, f, name="square-first")
    p = PointOn(e2, np.array([3.0, 5.0]))
    out = pushforward(m, Tangent(p, np.array([1.0, 0.0])))
    assert np.allclose(out.vec, [6.0, 0.0], atol=1e-6)


def test_frame_components_hand_value():
    e2 = euclidean(2)
    p = PointOn(e2, np.zeros(2))
    frame = np.array([[2.0, 0.0], [0.0, 1.0]])
    c = frame_components(Tangent(p, np.array([1.0, 0.0])), frame)
    assert np.allclose(c, [0.5, 0.0], atol=1e-12)


def test_frame_components_error_modes():
    s2 = sphere(2)
    p = PointOn(s2, np.array([0.0, 0.0, 1.0]))
    frame = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    with pytest.raises(ResidualTooLarge):
        frame_components(Tangent(p, np.array([0.0, 0.0, 1.0])), frame)
    with pytest.raises(RankDeficient):
        frame_components(Tangent(p, np.array([1.0, 0.0, 0.0])), np.array([[1.0, 0, 0], [2.0, 0, 0]]))


def test_sphere_sampler_and_tangent_basis(rng_for):
    s2 = sphere(2)
    rng = rng_for("geometry:sphere")
    for _ in range(20):
        p = random_point(s2, rng)
        assert s2.contains(p.coords, 1e-6)
        assert abs(p.coords @ p.coords - 1.0) < 1e-9
        basis = np.asarray(s2.tangent_basis(p.coords))
        assert basis.shape == (2, 3)
        assert np.allclose(basis @ p.coords, 0.0, atol=1e-9)
        v = random_tangent(p, rng)
        assert abs(v.vec @ p.coords) < 1e-8


def test_product_manifold_contains(rng_for):
    m = product_manifold([sphere(2), euclidean(2)])
    rng = rng_for("geometry:product")
    p = random_point(m, rng)
    assert m.dim == 4 and m.ambient_dim == 5
    assert m.contains(p.coords, 1e-6)
    bad = p.coords.copy()
    bad[:3] *= 2.0
    assert not m.contains(bad, 1e-6)


def test_tensor_constructors(rng_for):
    e2 = euclidean(2)
    rng = rng_for("geometry:tensors")
    a = np.array([[1.0, 0.5], [0.5, 2.0]])
    t = constant_matrix_tensor(e2, a)
    assert t.symmetric
    p = random_point(e2, rng)
    u, v = random_tangent(p, rng), random_tangent(p, rng)
    assert np.isclose(t.eval(p, u, v), u.vec @ a @ v.vec)

    doubled = scale_tensor(t, lambda c: 2.0, name="doubled")
    assert np.isclose(doubled.eval(p, u, v), 2.0 * t.eval(p, u, v))

    g = ambient_dot_metric(sphere(2))
    q = random_point(sphere(2), rng)
    w = random_tangent(q, rng)
    assert g.eval(q, w, w) >= 0.0

    t1 = polynomial_tensor(e2, seed=7)
    t2 = polynomial_tensor(e2, seed=7)
    assert np.isclose(t1.eval(p, u, v), t2.eval(p, u, v))
