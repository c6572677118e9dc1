import dataclasses

import numpy as np
import pytest

from sspace.core import matrix_rep
from sspace.errors import NotATensor
from sspace.geometry import random_point
from sspace.morphisms import (
    comes_from_tensor,
    conjugate_by_base_change,
    invariance_group_member,
    is_invariant_tensor,
    is_subsspace,
    iterate_pullback,
    linking_map,
    over_map,
    pullback_matrix,
    verify_morphism,
)


def test_morphism_checks_pass_on_catalog_maps(reg, rng_for):
    cases = [
        ("lm-flat-2", "shear"),
        ("oframes-flat-2", None),
        ("liegroup-pair-so3", "rebase"),
        ("liegroup-bases-so3", "collapse"),
    ]
    for entry_name, key in cases:
        objs = reg[entry_name].objects
        m = objs["morphisms"][key] if key else objs["inclusion"]
        rng = rng_for(f"morph:verify:{entry_name}")
        rep = verify_morphism(m, 25, rng)
        assert rep.passed, f"{entry_name}: {rep.detail}"


def test_wrong_tau_is_rejected(reg, rng_for):
    m = reg["oframes-flat-2"].objects["inclusion"]
    bad = dataclasses.replace(m, tau=lambda a: np.asarray(a, dtype=float) @ np.diag([2.0, 1.0]))
    rep = verify_morphism(bad, 25, rng_for("morph:bad-tau"))
    assert not rep.passed
    assert rep.max_deviation > 1e-3


def test_linking_map_values(reg, rng_for):
    rng = rng_for("morph:linking")
    incl = reg["oframes-flat-2"].objects["inclusion"]
    z = random_point(incl.source.total, rng)
    assert np.allclose(linking_map(incl, z), np.eye(2), atol=1e-9)

    shear = reg["lm-flat-2"].objects["morphisms"]["shear"]
    z = random_point(shear.source.total, rng)
    assert np.allclose(linking_map(shear, z), np.array([[1.0, 0.3], [-0.2, 1.4]]), atol=1e-9)


def test_linking_map_requires_identity_base(reg, rng_for):
    incl = reg["unit-tangent-sphere2"].objects["inclusion"]
    z = random_point(incl.source.total, rng_for("morph:nonid"))
    assert not incl.over_identity
    with pytest.raises(ValueError):
        linking_map(incl, z)


def test_over_map_pins_unit_tangent_frames(reg, rng_for):
    incl = reg["unit-tangent-sphere2"].objects["inclusion"]
    rng = rng_for("morph:overmap")
    for _ in range(5):
        z = random_point(incl.source.total, rng)
        assert np.allclose(over_map(incl, z), np.diag([1.0, 1.0, 1.0, 0.0]), atol=1e-6)


def test_pullback_matrix_of_central_scaling(reg, rng_for):
    objs = reg["lm-flat-2"].objects
    m = objs["morphisms"]["scale"]
    g = objs["metric"]
    rng = rng_for("morph:pullback")
    for _ in range(5):
        z = random_point(m.source.total, rng)
        assert np.allclose(pullback_matrix(m, g, z), 4.0 * matrix_rep(m.source, g, z), atol=1e-8)


def test_invariant_tensor_detection(reg, rng_for):
    objs = reg["lm-flat-2"].objects
    g = objs["metric"]
    rng = rng_for("morph:invariant")
    assert is_invariant_tensor(objs["morphisms"]["center"], g, 20, rng).passed
    assert not is_invariant_tensor(objs["morphisms"]["shear"], g, 20, rng).passed


def test_invariance_group_membership_and_conjugation(reg, rng_for):
    objs = reg["lm-flat-2"].objects
    s, g = objs["sspace"], objs["metric"]
    rng = rng_for("morph:group-member")
    z = random_point(s.total, rng)
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    u = z.coords[2:].reshape(2, 2)
    # rep at z is u u^T read through frames; its symmetry group is conjugate to O(2)
    d = np.linalg.solve(u, rot @ u)
    assert invariance_group_member(s, g, z, d)
    assert not invariance_group_member(s, g, z, np.diag([2.0, 1.0]))
    moved = conjugate_by_base_change(s, np.array([[1.0, 1.0], [0.0, 1.0]]), d, z)
    za = s.action(z, np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert invariance_group_member(s, g, za, moved)


def test_iterate_pullback_powers_and_rejection(reg, rng_for):
    objs = reg["lm-flat-2"].objects
    g = objs["metric"]
    scale, shear = objs["morphisms"]["scale"], objs["morphisms"]["shear"]
    rng = rng_for("morph:iterate")
    z = random_point(scale.source.total, rng)
    rep = matrix_rep(scale.source, g, z)
    assert np.allclose(iterate_pullback(scale, g, 0, z, 40, rng), rep, atol=1e-8)
    assert np.allclose(iterate_pullback(scale, g, 3, z, 40, rng), 64.0 * rep, atol=1e-6)
    with pytest.raises(NotATensor) as exc:
        iterate_pullback(shear, g, 2, z, 40, rng)
    assert exc.value.iteration == 1


def test_subsspace_inclusions(reg, rng_for):
    rng = rng_for("morph:sub")
    assert is_subsspace(reg["oframes-flat-2"].objects["inclusion"], 20, rng).passed
    assert is_subsspace(reg["unit-tangent-sphere2"].objects["inclusion"], 20, rng).passed


def test_comes_from_tensor_split(reg, rng_for):
    rng = rng_for("morph:comes-from")
    pair = reg["liegroup-pair-so3"].objects
    assert comes_from_tensor(pair["morphisms"]["rebase"], pair["metric"], 20, rng).passed
    bases = reg["liegroup-bases-so3"].objects
    rep = comes_from_tensor(bases["morphisms"]["collapse"], bases["metric"], 20, rng)
    assert not rep.passed
    assert rep.max_deviation > 1e-3
