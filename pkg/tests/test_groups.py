import numpy as np
import pytest

from sspace.errors import MembershipViolation
from sspace.groups import (
    AlgebraElement,
    GroupElement,
    adjoint,
    circle,
    exp_curve,
    general_linear,
    group_manifold,
    orthogonal,
    product_group,
    random_element,
    sign_group,
    special_orthogonal,
    trivial_group,
)

L_Y = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
L_Z = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])


def test_adjoint_rotation_moves_generators():
    # conjugating L_z by a quarter turn around the x-axis lands on -L_y
    so3 = special_orthogonal(3)
    r_x = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]])
    out = adjoint(GroupElement(so3, r_x), AlgebraElement(so3, L_Z))
    assert np.allclose(out.value, -L_Y, atol=1e-12)


def test_exp_curve_stays_in_group(rng_for):
    so3 = special_orthogonal(3)
    g = exp_curve(AlgebraElement(so3, L_Z), 0.3)
    assert so3.membership(g.value, 1e-9)
    assert np.isclose(np.linalg.det(g.value), 1.0)


def test_circle_and_sign_group():
    u1 = circle()
    assert u1.dim == 1
    val = u1.exp(u1.algebra_basis[0], np.pi / 2)
    # generator convention inherited from the skew basis: e_01 = +1
    assert np.allclose(val, [[0.0, 1.0], [-1.0, 0.0]], atol=1e-12)
    o1 = sign_group()
    assert o1.dim == 0 and len(o1.algebra_basis) == 0
    assert o1.membership(np.array([[-1.0]]), 1e-9)
    assert not o1.membership(np.array([[0.5]]), 1e-9)


def test_samplers_produce_members(rng_for):
    rng = rng_for("groups:samplers")
    for g in (general_linear(2), orthogonal(3), special_orthogonal(3), circle()):
        for _ in range(10):
            a = random_element(g, rng).value
            assert g.membership(a, 1e-6), g.name


def test_orthogonal_sampler_covers_both_components(rng_for):
    rng = rng_for("groups:components")
    dets = {round(float(np.linalg.det(random_element(orthogonal(2), rng).value))) for _ in range(40)}
    assert dets == {-1, 1}


def test_product_group_round_trips(rng_for):
    g = product_group([orthogonal(2), sign_group(), circle()])
    rng = rng_for("groups:product")
    a = random_element(g, rng).value
    b = random_element(g, rng).value
    assert isinstance(a, tuple) and len(a) == 3
    flat = g.flatten(a)
    back = g.unflatten(flat)
    assert np.allclose(g.flatten(back), flat)
    # group laws through the tuple representation
    ab = g.mul(a, b)
    assert g.membership(ab, 1e-8)
    ident = g.mul(a, g.inv(a))
    assert np.allclose(g.flatten(ident), g.flatten(g.identity), atol=1e-9)
    # algebra basis: one slot active per element, sign slot contributes none
    assert len(g.algebra_basis) == 2


def test_trivial_group():
    t = trivial_group()
    assert t.dim == 0
    assert t.membership(t.identity, 1e-9)


def test_group_manifold_structure(rng_for):
    so3 = special_orthogonal(3)
    m = group_manifold(so3)
    assert m.dim == 3 and m.ambient_dim == 9
    rng = rng_for("groups:manifold")
    x = m.sampler(rng)
    assert m.contains(x, 1e-6)
    basis = np.asarray(m.tangent_basis(x))
    assert basis.shape == (3, 9)
    assert np.linalg.matrix_rank(basis) == 3


def test_exp_curve_rejects_escapes():
    # a symmetric generator leaves the orthogonal group immediately
    o3 = orthogonal(3)
    with pytest.raises(MembershipViolation):
        exp_curve(AlgebraElement(o3, np.eye(3)), 0.5)
