"""Flat-plane instances: full linear frames, orthogonal frames, punctured
trivializations, and diagonalizing frames of constant-signature forms.

Everything here lives over R^2 with closed-form frames and actions, so
these entries carry the sharpest-tolerance versions of the roundtrip,
invariance, morphism, connection, and naturality checks.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from ..connections import (
    ConnectionFunction,
    connection_from_bases,
    connection_from_k,
    fundamental_vertical_field,
    global_frame_check,
    sasaki_mok_metric,
    splitting_report,
)
from ..core import SSpace, matrix_rep, verify_rigidity
from ..errors import NotATensor, SignatureMismatch, SplittingFailure
from ..geometry import (
    Manifold,
    PointOn,
    SmoothMap,
    Tangent,
    Tensor02Field,
    constant_matrix_tensor,
    euclidean,
    polynomial_tensor,
    product_manifold,
    random_point,
    scale_tensor,
)
from ..groups import (
    AlgebraElement,
    general_linear,
    group_manifold,
    invariant_subspace_group,
    orthogonal,
)
from ..morphisms import (
    SSpaceMorphism,
    invariance_group_member,
    is_invariant_tensor,
    is_subsspace,
    iterate_pullback,
    linking_map,
    over_map,
)
from ..naturality import (
    Atlas,
    constant_signature_sspace,
    frame_twist,
    is_atlas_natural,
    is_fibration_natural,
    is_lambda_natural,
    is_weak_natural,
    validate_atlas,
)
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
    expect_raises,
    fibration_natural_run,
    identity_coords_link,
    invariance_run,
    morphism_run,
    natural_run,
    ok,
    planted_invariance_run,
    projection_map,
    pullback_law_run,
    right_translation_automorphism,
    rigidity_run,
    rot2,
    roundtrip_matrix_run,
    roundtrip_tensor_run,
    theta_equivariance_run,
    transitivity_run,
    vector_rep_run,
)


_rot = rot2


_pr1_map = projection_map
_identity_link = identity_coords_link
_automorphism = right_translation_automorphism


# ---------------------------------------------------------------------------
# lm-flat-2: all linear frames of the plane


def lm_flat_sspace() -> SSpace:
    base = euclidean(2, name="R^2")
    gl2 = general_linear(2)
    total = product_manifold([base, group_manifold(gl2)], name="R^2 x GL(2)")
    psi = _pr1_map(total, base)

    def action(z: PointOn, a) -> PointOn:
        u = z.coords[2:].reshape(2, 2)
        return PointOn(total, np.concatenate([z.coords[:2], (u @ np.asarray(a, dtype=float)).ravel()]))

    def frames(z: PointOn) -> np.ndarray:
        return z.coords[2:].reshape(2, 2).T

    def fiber_section(p: PointOn) -> PointOn:
        return PointOn(total, np.concatenate([p.coords, np.eye(2).ravel()]))

    def witness(z: PointOn, zbar: PointOn) -> np.ndarray:
        u = z.coords[2:].reshape(2, 2)
        ubar = zbar.coords[2:].reshape(2, 2)
        return np.linalg.solve(u, ubar)

    return SSpace(
        name="lm-flat-2",
        total=total,
        base=base,
        group=gl2,
        psi=psi,
        action=action,
        frames=frames,
        fiber_section=fiber_section,
        fiber_split=(2, 6),
        witness_finder=witness,
        analytic=True,
    )


def flat_connection_fn(base: Manifold) -> ConnectionFunction:
    """Covariant derivative of the flat plane: plain velocity of the vector part."""
    n = base.ambient_dim

    def ev(tm_coords: np.ndarray, velocity: np.ndarray) -> np.ndarray:
        return np.asarray(velocity, dtype=float)[n:]

    return ConnectionFunction(base=base, eval=ev, name="flat")


def build_lm() -> CatalogEntry:
    s = lm_flat_sspace()
    base = s.base
    g = constant_matrix_tensor(base, np.eye(2), name="euclidean")
    poly = polynomial_tensor(base, seed=7)
    null = constant_matrix_tensor(base, np.zeros((2, 2)), name="null")
    k_flat = flat_connection_fn(base)
    conn = connection_from_k(s, k_flat, name="flat-kernel")
    gl_algebra = [AlgebraElement(s.group, x) for x in s.group.algebra_basis]

    a0_shear = np.array([[1.0, 0.3], [-0.2, 1.4]])
    m_shear = _automorphism(s, a0_shear, "shear-translation")
    m_center = _automorphism(s, -np.eye(2), "center-translation")
    m_scale = _automorphism(s, 2.0 * np.eye(2), "scaling-translation")

    def twisted_frames(z: PointOn) -> np.ndarray:
        u = z.coords[2:].reshape(2, 2)
        return (u @ _rot(z.coords[2])).T

    s_twisted = dataclasses.replace(s, frames=twisted_frames, name="lm-flat-2-fiber-twist")

    def base_change_matches(ctx: RunContext) -> Report:
        from ..core import extract_base_change
        from ..groups import random_element

        worst = 0.0
        for _ in range(ctx.samples):
            z = random_point(s.total, ctx.rng)
            a = random_element(s.group, ctx.rng).value
            worst = max(worst, float(np.linalg.norm(extract_base_change(s, a, z, ctx.cfg) - a)))
        return ok(worst, ctx.tol, ctx.samples)

    def independent_matrix_map(z: PointOn) -> np.ndarray:
        p, u = z.coords[:2], z.coords[2:].reshape(2, 2)
        a = np.array([[1.0 + p[0] ** 2, 0.2], [0.2, 2.0 + p[1]]])
        return u.T @ a @ u

    def constant_identity_map(z: PointOn) -> np.ndarray:
        return np.eye(2)

    def mismatched_frames_map(z: PointOn) -> np.ndarray:
        u = z.coords[2:].reshape(2, 2).copy()
        u[0, 0] += 0.1 * np.sin(z.coords[0])
        return u.T @ u

    def vec_field(p: PointOn) -> Tangent:
        return Tangent(p, np.array([p.coords[1], 1.0 + p.coords[0] ** 2]))

    def linking_is_translation(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(5, ctx.samples // 10)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            worst = max(worst, float(np.linalg.norm(linking_map(m_shear, z, ctx.cfg) - a0_shear)))
        return ok(worst, ctx.tol, count)

    def center_preserves_metric(ctx: RunContext) -> Report:
        rep = is_invariant_tensor(m_center, g, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)
        if not rep.passed:
            return rep
        z = random_point(s.total, ctx.rng)
        det = abs(np.linalg.det(linking_map(m_center, z, ctx.cfg)))
        if abs(det - 1.0) > ctx.tol:
            return Report(False, abs(det - 1.0), rep.samples, "invariant linking map not unimodular")
        return rep

    def shear_breaks_metric(ctx: RunContext) -> Report:
        return expect_failure(
            is_invariant_tensor(m_shear, g, ctx.samples, ctx.rng, ctx.cfg, ctx.tol), ctx.tol
        )

    def iterate_central_scaling(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(3, ctx.samples // 20)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            rep = matrix_rep(s, g, z, ctx.cfg)
            it0 = iterate_pullback(m_scale, g, 0, z, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)
            it2 = iterate_pullback(m_scale, g, 2, z, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)
            worst = max(worst, float(np.linalg.norm(it0 - rep)))
            worst = max(worst, float(np.linalg.norm(it2 - 16.0 * rep)))
        return ok(worst, ctx.tol, count)

    def iterate_rejects_noncentral(ctx: RunContext) -> Report:
        z = random_point(s.total, ctx.rng)
        try:
            iterate_pullback(m_shear, g, 2, z, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)
        except NotATensor as exc:
            if exc.iteration == 1:
                return Report(True, 0.0, ctx.samples, str(exc)[:120])
            return Report(False, float("inf"), ctx.samples, f"failed at power {exc.iteration}, expected 1")
        return Report(False, float("inf"), ctx.samples, "noncentral iterate was accepted")

    def splitting_diagnostics(ctx: RunContext) -> Report:
        for _ in range(3):
            z = random_point(s.total, ctx.rng)
            rep = splitting_report(s, k_flat, z, ctx.cfg)
            good = (
                rep["injective"]
                and rep["image_ok"]
                and rep["split_ok"]
                and rep["agrees"]
                and rep["horizontal_dim"] == 2
            )
            if not good:
                return Report(False, 1.0, 3, f"diagnostics {rep}")
        return Report(True, 0.0, 3, "")

    def masked_connection_fn() -> ConnectionFunction:
        def ev(tm_coords: np.ndarray, velocity: np.ndarray) -> np.ndarray:
            return np.array([0.0, float(velocity[3])])

        return ConnectionFunction(base=base, eval=ev, name="masked")

    def masked_splitting_rejected(ctx: RunContext) -> Report:
        k_bad = masked_connection_fn()
        z = random_point(s.total, ctx.rng)
        rep = splitting_report(s, k_bad, z, ctx.cfg)
        shape_ok = (
            rep["horizontal_dim"] == 4
            and not rep["injective"]
            and not rep["split_ok"]
            and rep["agrees"]
        )
        if not shape_ok:
            return Report(False, 1.0, 1, f"diagnostics {rep}")
        raised = expect_raises(
            SplittingFailure, lambda: connection_from_k(s, k_bad, ctx.cfg, probes=[z])
        )
        return raised

    def bundle_metric_values(ctx: RunContext) -> Report:
        gt1 = sasaki_mok_metric(s, k_flat, g, lambda z: 1.0, [lambda z: 1.0, lambda z: 1.0])
        gt2 = sasaki_mok_metric(s, k_flat, g, lambda z: 2.0, [lambda z: 1.0, lambda z: 3.0])
        worst = 0.0
        count = max(4, ctx.samples // 25)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            basis = np.asarray(s.total.tangent_basis(z.coords), dtype=float)
            a_vec = ctx.rng.standard_normal(6) @ basis
            b_vec = ctx.rng.standard_normal(6) @ basis
            v1 = gt1.eval(z, Tangent(z, a_vec), Tangent(z, b_vec))
            worst = max(worst, abs(v1 - float(a_vec @ b_vec)))
            v2 = gt2.eval(z, Tangent(z, a_vec), Tangent(z, b_vec))
            expect2 = (
                2.0 * float(a_vec[:2] @ b_vec[:2])
                + (a_vec[2] * b_vec[2] + a_vec[4] * b_vec[4])
                + 3.0 * (a_vec[3] * b_vec[3] + a_vec[5] * b_vec[5])
            )
            worst = max(worst, abs(v2 - expect2))
        return ok(worst, ctx.tol, count)

    def degenerate_bundle_metric(ctx: RunContext) -> Report:
        def k_zero_eval(tm_coords, velocity):
            return np.zeros(2)

        k_zero = ConnectionFunction(base=base, eval=k_zero_eval, name="zero")
        gt = sasaki_mok_metric(s, k_zero, g, lambda z: 1.0, [lambda z: 1.0, lambda z: 1.0])
        for _ in range(3):
            z = random_point(s.total, ctx.rng)
            basis = np.asarray(s.total.tangent_basis(z.coords), dtype=float)
            gram = np.array(
                [
                    [gt.eval(z, Tangent(z, bi), Tangent(z, bj)) for bj in basis]
                    for bi in basis
                ]
            )
            if np.min(np.linalg.eigvalsh(gram)) > 1e-9:
                return Report(False, 1.0, 3, "degenerate vertical part went unnoticed")
        return Report(True, 0.0, 3, "")

    def no_nonzero_constant_form(ctx: RunContext) -> Report:
        forms = [np.eye(2), np.array([[1.0, 2.0], [0.0, -1.0]])]
        from ..core import admits_constant_rep

        for a in forms:
            rep = admits_constant_rep(s, a, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)
            wrapped = expect_failure(rep, ctx.tol)
            if not wrapped.passed:
                return wrapped
        return Report(True, 0.0, ctx.samples, "")

    checks = (
        Check("rigidity", "frames move by a point-independent group representation", "structure", rigidity_run(s)),
        Check(
            "rigidity-rejects-fiber-twist",
            "a frame twist varying along fibers breaks the fixed representation",
            "structure",
            lambda ctx: expect_failure(
                verify_rigidity(s_twisted, max(10, ctx.samples // 4), ctx.rng, ctx.cfg, ctx.tol), ctx.tol
            ),
        ),
        Check("dimension-identity", "dim N = dim M + dim O - stabilizer dim", "structure", dimension_run(s, 0)),
        Check("fiber-transitivity", "group carries any frame to the section frame", "structure", transitivity_run(s)),
        Check("base-change-equals-group-value", "the base change of all-frames space is the group element itself", "structure", base_change_matches),
        Check("roundtrip-tensor", "tensor to matrix map and back is the identity", "correspondence", roundtrip_tensor_run(s, poly)),
        Check("roundtrip-matrix", "equivariant matrix map to tensor and back is the identity", "correspondence", roundtrip_matrix_run(s, independent_matrix_map)),
        Check("rep-invariance", "representations transform by congruence with the base change", "correspondence", invariance_run(s, poly)),
        Check("invariance-rejects-constant-identity", "the constant identity map is not equivariant over all frames", "correspondence", planted_invariance_run(s, constant_identity_map)),
        Check("invariance-rejects-mismatched-frames", "values read in perturbed frames break equivariance", "correspondence", planted_invariance_run(s, mismatched_frames_map)),
        Check("vector-rep-equivariance", "vector coefficients transform by the inverse base change", "correspondence", vector_rep_run(s, vec_field)),
        Check("automorphism-morphism", "right translation with conjugation is a morphism", "morphisms", morphism_run(m_shear)),
        Check("automorphism-linking-is-base-change", "the linking map of a right translation is its base change", "morphisms", linking_is_translation),
        Check("cocycle-law", "linking maps satisfy the base-change cocycle law", "morphisms", cocycle_run(m_shear)),
        Check("pullback-law", "representations pull back by congruence with the linking map", "morphisms", pullback_law_run(m_shear, poly)),
        Check("center-automorphism-preserves-metric", "translation by -identity preserves the metric representation", "morphisms", center_preserves_metric),
        Check("shear-automorphism-breaks-metric", "a shear translation moves the metric representation", "morphisms", shear_breaks_metric),
        Check("iterate-powers-of-central-scaling", "iterated pullbacks by a central scaling multiply by powers", "morphisms", iterate_central_scaling),
        Check("iterate-rejects-noncentral", "iterates along a noncentral translation are not tensors", "morphisms", iterate_rejects_noncentral),
        Check("frame-derivative-splitting", "the frame-derivative kernel complements the vertical space", "connections", splitting_diagnostics),
        Check("kernel-connection-laws", "the kernel connection is idempotent, vertical, equivariant", "connections", connection_run(conn)),
        Check("coframe-duality", "lifted frames and fundamental fields are dual to the coframes", "connections", coframe_duality_run(conn, gl_algebra)),
        Check("theta-equivariance", "the soldering coframe transforms by the base change", "connections", theta_equivariance_run(s)),
        Check("splitting-rejects-masked-derivative", "a masked covariant derivative has no horizontal complement", "connections", masked_splitting_rejected),
        Check("bundle-metric-values", "weighted bundle metrics take their closed-form values", "connections", bundle_metric_values),
        Check("bundle-metric-degenerate-detected", "a vanishing covariant derivative degenerates the bundle metric", "connections", degenerate_bundle_metric),
        Check("null-tensor-natural", "the null tensor has a constant representation", "naturality", natural_run(s, null, True)),
        Check("metric-not-natural", "the flat metric has no constant representation over all frames", "naturality", natural_run(s, g, False)),
        Check("no-nonzero-constant-form", "no nonzero form is preserved by every base change", "naturality", no_nonzero_constant_form),
        Check("metric-rep-depends-only-on-fiber", "the metric representation depends only on the frame part", "naturality", fibration_natural_run(s, g, True)),
        Check("poly-rep-depends-on-base", "a position-dependent tensor fails fiber-only dependence", "naturality", fibration_natural_run(s, poly, False)),
    )

    return CatalogEntry(
        name="lm-flat-2",
        summary="all linear frames of the flat plane; the group is GL(2) acting by basis change",
        checks=checks,
        objects={
            "sspace": s,
            "metric": g,
            "poly": poly,
            "null": null,
            "connection_fn": k_flat,
            "connection": conn,
            "morphisms": {"shear": m_shear, "center": m_center, "scale": m_scale},
            "overid_sweeps": [(m_shear, poly), (m_center, g), (m_scale, poly)],
        },
    )


# ---------------------------------------------------------------------------
# oframes-flat-2: orthonormal frames of the plane


def oframes_sspace() -> SSpace:
    base = euclidean(2, name="R^2")
    o2 = orthogonal(2)
    total = product_manifold([base, group_manifold(o2)], name="R^2 x O(2)")
    psi = _pr1_map(total, base)

    def action(z: PointOn, a) -> PointOn:
        u = z.coords[2:].reshape(2, 2)
        return PointOn(total, np.concatenate([z.coords[:2], (u @ np.asarray(a, dtype=float)).ravel()]))

    def frames(z: PointOn) -> np.ndarray:
        return z.coords[2:].reshape(2, 2).T

    def fiber_section(p: PointOn) -> PointOn:
        return PointOn(total, np.concatenate([p.coords, np.eye(2).ravel()]))

    def witness(z: PointOn, zbar: PointOn) -> np.ndarray:
        u = z.coords[2:].reshape(2, 2)
        ubar = zbar.coords[2:].reshape(2, 2)
        return u.T @ ubar

    return SSpace(
        name="oframes-flat-2",
        total=total,
        base=base,
        group=o2,
        psi=psi,
        action=action,
        frames=frames,
        fiber_section=fiber_section,
        fiber_split=(2, 6),
        witness_finder=witness,
        analytic=True,
    )


def build_oframes() -> CatalogEntry:
    s = oframes_sspace()
    lm = lm_flat_sspace()
    base = s.base
    g = constant_matrix_tensor(base, np.eye(2), name="euclidean")
    g3 = constant_matrix_tensor(base, 3.0 * np.eye(2), name="triple-euclidean")
    t_aniso = constant_matrix_tensor(base, np.diag([1.0, 2.0]), name="anisotropic")
    poly = polynomial_tensor(base, seed=11)

    m_incl = _identity_link(s, lm, "orthonormal-into-linear")
    m_auto = _automorphism(s, _rot(0.7), "rotation-translation")

    # constant frame twists; the base change becomes a conjugated copy of O(2)
    a1 = np.array([[1.0, 1.0], [0.0, 1.0]])
    a2 = np.array([[0.5, 0.0], [0.3, 2.0]])
    twist_rng = np.random.default_rng(12345)
    member1 = frame_twist(s, lambda z: a1, samples=8, rng=twist_rng, name="oframes-twist-a1", check=False)
    member2 = frame_twist(s, lambda z: a2, samples=8, rng=twist_rng, name="oframes-twist-a2", check=False)
    members = (s, member1, member2)
    links = {}
    for i in range(3):
        for j in range(3):
            if i != j:
                links[(i, j)] = _identity_link(members[i], members[j], f"twist-link-{i}{j}")
    atlas = Atlas(members=members, links=links, name="constant-twist")

    rot_member = frame_twist(
        s, lambda z: _rot(0.4), samples=8, rng=twist_rng, name="oframes-twist-rot", check=False
    )

    def inclusion_linking_identity(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(5, ctx.samples // 10)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            worst = max(worst, float(np.linalg.norm(linking_map(m_incl, z, ctx.cfg) - np.eye(2))))
        return ok(worst, ctx.tol, count)

    def inclusion_overmap_constant(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(4, ctx.samples // 25)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            worst = max(worst, float(np.linalg.norm(over_map(m_incl, z, ctx.cfg) - np.eye(2))))
        return ok(worst, ctx.tol, count)

    def rotation_preserves_metric(ctx: RunContext) -> Report:
        rep = is_invariant_tensor(m_auto, g, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)
        if not rep.passed:
            return rep
        z = random_point(s.total, ctx.rng)
        c = linking_map(m_auto, z, ctx.cfg)
        det_gap = abs(abs(np.linalg.det(c)) - 1.0)
        if det_gap > ctx.tol:
            return Report(False, det_gap, rep.samples, "invariant linking map not unimodular")
        if not invariance_group_member(s, g, z, c, ctx.cfg, ctx.tol):
            return Report(False, 1.0, rep.samples, "linking map escaped the invariance group")
        return rep

    def rotation_breaks_anisotropic(ctx: RunContext) -> Report:
        return expect_failure(
            is_invariant_tensor(m_auto, t_aniso, ctx.samples, ctx.rng, ctx.cfg, ctx.tol), ctx.tol
        )

    def iterate_membership(ctx: RunContext) -> Report:
        """Stable iterates force the linking map into the invariance group."""
        z = random_point(s.total, ctx.rng)
        rep = matrix_rep(s, g, z, ctx.cfg)
        c = linking_map(m_auto, z, ctx.cfg)
        m2 = np.linalg.matrix_power(c.T, 2) @ rep @ np.linalg.matrix_power(c, 2)
        m3 = np.linalg.matrix_power(c.T, 3) @ rep @ np.linalg.matrix_power(c, 3)
        if float(np.linalg.norm(m3 - m2)) > ctx.tol:
            return Report(False, float(np.linalg.norm(m3 - m2)), 1, "iterates did not stabilize")
        if not invariance_group_member(s, g, z, c, ctx.cfg, ctx.tol):
            return Report(False, 1.0, 1, "stable iterates but the linking map moves the form")
        return Report(True, 0.0, 1, "")

    def level_set_image(ctx: RunContext) -> Report:
        expected = 3.0 * np.eye(2)
        worst = 0.0
        count = max(5, ctx.samples // 10)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            rep = matrix_rep(lm, g3, PointOn(lm.total, z.coords), ctx.cfg)
            worst = max(worst, float(np.linalg.norm(rep - expected)))
        strayed = 0.0
        for _ in range(20):
            w = random_point(lm.total, ctx.rng)
            strayed = max(strayed, float(np.linalg.norm(matrix_rep(lm, g3, w, ctx.cfg) - expected)))
        if worst > ctx.tol:
            return Report(False, worst, count, "image left the level set")
        if strayed <= 10 * ctx.tol:
            return Report(False, strayed, count, "representation looks globally constant")
        return Report(True, worst, count, "")

    def null_implication(ctx: RunContext) -> Report:
        null = constant_matrix_tensor(base, np.zeros((2, 2)), name="null")
        big = is_lambda_natural(lm, null, max(20, ctx.samples // 4), ctx.rng, ctx.cfg, ctx.tol)
        small = is_lambda_natural(s, null, max(20, ctx.samples // 4), ctx.rng, ctx.cfg, ctx.tol)
        passed = (not big.passed) or small.passed
        return Report(passed, max(big.max_deviation, small.max_deviation), big.samples, "")

    def witness_is_invariant_form(ctx: RunContext) -> Report:
        from ..core import admits_constant_rep

        rep = is_lambda_natural(s, g3, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)
        if not rep.passed:
            return Report(False, rep.max_deviation, rep.samples, "expected a natural tensor")
        adm = admits_constant_rep(s, rep.witness_matrix, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)
        gap = float(np.linalg.norm(rep.witness_matrix - 3.0 * np.eye(2)))
        if gap > ctx.tol:
            return Report(False, gap, rep.samples, "witness differs from the constant value")
        return adm

    def atlas_matches_base(ctx: RunContext) -> Report:
        n = max(20, ctx.samples // 4)
        for t in (g3, t_aniso, poly):
            whole = is_atlas_natural(atlas, t, n, ctx.rng, ctx.cfg, ctx.tol)
            single = is_lambda_natural(s, t, n, ctx.rng, ctx.cfg, ctx.tol)
            if whole.passed != single.passed:
                return Report(
                    False,
                    max(whole.max_deviation, single.max_deviation),
                    n,
                    f"{t.name}: atlas verdict {whole.passed} vs member verdict {single.passed}",
                )
        return Report(True, 0.0, n, "")

    def group_twist_preserves_rep(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(5, ctx.samples // 10)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            worst = max(
                worst,
                float(
                    np.linalg.norm(
                        matrix_rep(rot_member, g, z, ctx.cfg) - matrix_rep(s, g, z, ctx.cfg)
                    )
                ),
            )
        return ok(worst, ctx.tol, count)

    def twist_transport(ctx: RunContext) -> Report:
        link = atlas.link(0, 1)
        n = max(20, ctx.samples // 4)
        rep_src = is_lambda_natural(s, g3, n, ctx.rng, ctx.cfg, ctx.tol)
        rep_tgt = is_lambda_natural(member1, g3, n, ctx.rng, ctx.cfg, ctx.tol)
        if not (rep_src.passed and rep_tgt.passed):
            return Report(False, float("inf"), n, "expected both members natural")
        z = random_point(s.total, ctx.rng)
        c = linking_map(link, z, ctx.cfg)
        dev = float(np.linalg.norm(rep_tgt.witness_matrix - c.T @ rep_src.witness_matrix @ c))
        return ok(dev, ctx.tol, n)

    checks = (
        Check("rigidity", "frames move by a point-independent group representation", "structure", rigidity_run(s)),
        Check("dimension-identity", "dim N = dim M + dim O - stabilizer dim", "structure", dimension_run(s, 0)),
        Check("fiber-transitivity", "group carries any frame to the section frame", "structure", transitivity_run(s)),
        Check("admits-conformal-forms", "multiples of the identity are preserved by all base changes", "structure", admits_run(s, 3.0 * np.eye(2), True)),
        Check("admits-rejects-anisotropic", "an anisotropic form is moved by some rotation", "structure", admits_run(s, np.diag([1.0, 2.0]), False)),
        Check("roundtrip-tensor", "tensor to matrix map and back is the identity", "correspondence", roundtrip_tensor_run(s, g3)),
        Check("rep-invariance", "representations transform by congruence with the base change", "correspondence", invariance_run(s, poly)),
        Check("inclusion-morphism", "orthonormal frames include into all linear frames", "morphisms", morphism_run(m_incl)),
        Check("inclusion-linking-identity", "the inclusion links frames by the identity", "morphisms", inclusion_linking_identity),
        Check("inclusion-cocycle", "inclusion linking maps satisfy the cocycle law", "morphisms", cocycle_run(m_incl)),
        Check("inclusion-pullback-law", "representations pull back by congruence along the inclusion", "morphisms", pullback_law_run(m_incl, poly)),
        Check("inclusion-is-subspace", "the inclusion exhibits a frame subspace with constant over-map", "morphisms", lambda ctx: is_subsspace(m_incl, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)),
        Check("inclusion-overmap-constant", "the over-map of the inclusion is constantly the identity", "morphisms", inclusion_overmap_constant),
        Check("rotation-preserves-metric", "a rotation translation preserves the metric representation", "morphisms", rotation_preserves_metric),
        Check("rotation-breaks-anisotropic", "a rotation translation moves an anisotropic form", "morphisms", rotation_breaks_anisotropic),
        Check("iterate-membership", "stable iterated pullbacks force invariance-group membership", "morphisms", iterate_membership),
        Check("level-set-image", "natural tensors pin the image inside one level set upstairs", "morphisms", level_set_image),
        Check("null-inherited", "tensors natural upstairs stay natural on the subspace", "morphisms", null_implication),
        Check("conformal-natural", "conformal multiples of the metric have constant representation", "naturality", natural_run(s, g3, True)),
        Check("anisotropic-not-natural", "an anisotropic constant form is not natural over orthonormal frames", "naturality", natural_run(s, t_aniso, False)),
        Check("poly-not-natural", "a position-dependent tensor is not natural", "naturality", natural_run(s, poly, False)),
        Check("natural-witness-is-invariant-form", "the witness of a natural tensor is preserved by all base changes", "naturality", witness_is_invariant_form),
        Check("constant-twist-atlas-valid", "constant frame twists assemble into an atlas", "naturality", lambda ctx: validate_atlas(atlas, max(10, ctx.samples // 10), ctx.rng, ctx.cfg, ctx.tol)),
        Check("atlas-naturality-matches-base", "atlas naturality agrees with the base member on three tensors", "naturality", atlas_matches_base),
        Check("group-twist-preserves-rep", "twisting frames inside the invariance group keeps the representation", "naturality", group_twist_preserves_rep),
        Check("twist-transport", "natural witnesses transport by congruence along atlas links", "naturality", twist_transport),
    )

    return CatalogEntry(
        name="oframes-flat-2",
        summary="orthonormal frames of the flat plane; conformal forms are the natural ones",
        checks=checks,
        objects={
            "sspace": s,
            "ambient": lm,
            "metric": g,
            "triple": g3,
            "anisotropic": t_aniso,
            "poly": poly,
            "inclusion": m_incl,
            "automorphism": m_auto,
            "atlas": atlas,
            "overid_sweeps": [(m_incl, poly), (m_auto, t_aniso)],
        },
    )


# ---------------------------------------------------------------------------
# punctured-2: constant frames over a punctured-plane fiber


def punctured_sspace() -> SSpace:
    base = euclidean(2, name="R^2")
    gl2 = general_linear(2)

    def contains(x: np.ndarray, tol: float = 1e-6) -> bool:
        x = np.asarray(x, dtype=float)
        return (
            x.shape == (4,)
            and bool(np.all(np.isfinite(x)))
            and float(np.linalg.norm(x[2:])) > 0.05
        )

    def sampler(rng: np.random.Generator) -> np.ndarray:
        p = rng.normal(0.0, 2.0, size=2)
        for _ in range(100):
            q = rng.normal(0.0, 1.5, size=2)
            if np.linalg.norm(q) > 0.2:
                return np.concatenate([p, q])
        raise RuntimeError("unreachable: the fiber sampler kept drawing near the puncture")

    total = Manifold(
        name="R^2 x (R^2 minus 0)",
        dim=4,
        ambient_dim=4,
        contains=contains,
        tangent_basis=lambda x: np.eye(4),
        sampler=sampler,
    )
    psi = _pr1_map(total, base)

    def action(z: PointOn, a) -> PointOn:
        q = z.coords[2:]
        return PointOn(total, np.concatenate([z.coords[:2], q @ np.asarray(a, dtype=float)]))

    eye2 = np.eye(2)

    def frames(z: PointOn) -> np.ndarray:
        return eye2

    def fiber_section(p: PointOn) -> PointOn:
        return PointOn(total, np.concatenate([p.coords, [1.0, 0.0]]))

    def witness(z: PointOn, zbar: PointOn) -> np.ndarray:
        # a maps q to qbar and the perpendicular line to itself, scaled so
        # det a = 1; well conditioned for any pair away from the puncture
        q, qbar = z.coords[2:], zbar.coords[2:]
        b_src = np.array([q, [-q[1], q[0]]])
        c = float(q @ q) / float(qbar @ qbar)
        b_dst = np.array([qbar, [-c * qbar[1], c * qbar[0]]])
        return np.linalg.solve(b_src, b_dst)

    return SSpace(
        name="punctured-2",
        total=total,
        base=base,
        group=gl2,
        psi=psi,
        action=action,
        frames=frames,
        fiber_section=fiber_section,
        fiber_split=(2, 4),
        witness_finder=witness,
        analytic=True,
    )


def punctured_sub_sspace() -> SSpace:
    """The same construction along an invariant line of the fiber."""
    base = euclidean(2, name="R^2")
    grp = invariant_subspace_group(1, 2)

    def contains(x: np.ndarray, tol: float = 1e-6) -> bool:
        x = np.asarray(x, dtype=float)
        return (
            x.shape == (4,)
            and bool(np.all(np.isfinite(x)))
            and abs(x[3]) <= tol
            and abs(x[2]) > 0.05
        )

    def sampler(rng: np.random.Generator) -> np.ndarray:
        p = rng.normal(0.0, 2.0, size=2)
        for _ in range(100):
            t = rng.normal(0.0, 1.5)
            if abs(t) > 0.2:
                return np.concatenate([p, [t, 0.0]])
        raise RuntimeError("unreachable: the line sampler kept drawing near the puncture")

    rows = np.zeros((3, 4))
    rows[0, 0] = rows[1, 1] = rows[2, 2] = 1.0
    total = Manifold(
        name="R^2 x (line minus 0)",
        dim=3,
        ambient_dim=4,
        contains=contains,
        tangent_basis=lambda x: rows,
        sampler=sampler,
    )
    psi = _pr1_map(total, base)

    def action(z: PointOn, a) -> PointOn:
        q = z.coords[2:]
        return PointOn(total, np.concatenate([z.coords[:2], q @ np.asarray(a, dtype=float)]))

    eye2 = np.eye(2)

    def fiber_section(p: PointOn) -> PointOn:
        return PointOn(total, np.concatenate([p.coords, [1.0, 0.0]]))

    def witness(z: PointOn, zbar: PointOn) -> np.ndarray:
        return np.diag([zbar.coords[2] / z.coords[2], 1.0])

    return SSpace(
        name="punctured-2-line",
        total=total,
        base=base,
        group=grp,
        psi=psi,
        action=action,
        frames=lambda z: eye2,
        fiber_section=fiber_section,
        fiber_split=(2, 4),
        witness_finder=witness,
        analytic=True,
    )


def build_punctured() -> CatalogEntry:
    s = punctured_sspace()
    sub = punctured_sub_sspace()
    lm = lm_flat_sspace()
    base = s.base
    t_const = constant_matrix_tensor(base, np.array([[1.0, 0.5], [-0.5, 2.0]]), name="planted-form")
    t_diag = constant_matrix_tensor(base, np.diag([1.0, 2.0]), name="diag-form")
    poly = polynomial_tensor(base, seed=23)
    null = constant_matrix_tensor(base, np.zeros((2, 2)), name="null")
    t_scaled = scale_tensor(t_diag, lambda p: 1.0 + p[0] ** 2, name="bump-scaled")
    inv_scaled = scale_tensor(t_diag, lambda p: 1.0 / (1.0 + 0.5 * p[0] ** 2) ** 2, name="inverse-bump")

    m_sub = _identity_link(sub, s, "line-into-plane")

    def gamma_coord(x: np.ndarray) -> np.ndarray:
        return np.concatenate([np.asarray(x, dtype=float)[:2], np.eye(2).ravel()])

    m_gamma = SSpaceMorphism(
        source=s,
        target=lm,
        f=SmoothMap(s.total, lm.total, gamma_coord, name="canonical-frames"),
        tau=lambda a: np.eye(2),
        name="canonical-frames",
    )

    conn = connection_from_bases(
        s,
        horizontal_basis=lambda z: np.array([[1.0, 0, 0, 0], [0, 1.0, 0, 0]]),
        vertical_basis=lambda z: np.array([[0, 0, 1.0, 0], [0, 0, 0, 1.0]]),
        name="product-splitting",
    )
    good_algebra = [
        AlgebraElement(s.group, np.eye(2)),
        AlgebraElement(s.group, np.array([[0.0, -1.0], [1.0, 0.0]])),
    ]
    bad_algebra = [
        AlgebraElement(s.group, np.array([[1.0, 0.0], [0.0, 0.0]])),
        AlgebraElement(s.group, np.array([[0.0, 0.0], [1.0, 0.0]])),
    ]

    twist_rng = np.random.default_rng(777)
    member_b = frame_twist(
        s,
        lambda z: (1.0 + 0.5 * z.coords[0] ** 2) * np.eye(2),
        samples=8,
        rng=twist_rng,
        name="punctured-2-scaled",
        check=False,
    )
    atlas = Atlas(
        members=(s, member_b),
        links={(0, 1): _identity_link(s, member_b, "scale-link"), (1, 0): _identity_link(member_b, s, "scale-link-back")},
        name="two-member-scaling",
    )

    def fiber_dependent_map(z: PointOn) -> np.ndarray:
        a = np.array([[1.0, 0.0], [0.0, 2.0]])
        return a + 0.1 * z.coords[2] * np.eye(2)

    def base_matrix_map(z: PointOn) -> np.ndarray:
        p = z.coords[:2]
        return np.array([[1.0 + p[0] ** 2, 0.3], [0.1, 2.0 + np.sin(p[1])]])

    def gamma_linking_identity(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(5, ctx.samples // 10)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            worst = max(worst, float(np.linalg.norm(linking_map(m_gamma, z, ctx.cfg) - np.eye(2))))
        return ok(worst, ctx.tol, count)

    def sub_inherits_naturality(ctx: RunContext) -> Report:
        n = max(20, ctx.samples // 4)
        for t in (t_const, poly):
            big = is_lambda_natural(s, t, n, ctx.rng, ctx.cfg, ctx.tol)
            small = is_lambda_natural(sub, t, n, ctx.rng, ctx.cfg, ctx.tol)
            if big.passed and not small.passed:
                return Report(False, small.max_deviation, n, f"{t.name}: lost naturality downstairs")
        return Report(True, 0.0, n, "")

    def stabilizer_field_vanishes(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(5, ctx.samples // 10)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            q = z.coords[2:]
            w = ctx.rng.standard_normal(2)
            x = AlgebraElement(s.group, np.outer(np.array([-q[1], q[0]]), w))
            worst = max(worst, float(np.linalg.norm(fundamental_vertical_field(s, x, z, ctx.cfg))))
        return ok(worst, 1e-6, count)

    def degenerate_span_detected(ctx: RunContext) -> Report:
        rep = global_frame_check(conn, bad_algebra, max(3, ctx.samples // 20), ctx.rng, ctx.cfg)
        if rep.passed:
            return Report(False, 0.0, rep.samples, "a rank-deficient span was accepted")
        return Report(True, rep.max_deviation, rep.samples, "rank defect reported as expected")

    def constant_forms_natural(ctx: RunContext) -> Report:
        n = max(20, ctx.samples // 4)
        for a in (np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]), np.array([[2.0, 1.0], [0.5, -3.0]])):
            t = constant_matrix_tensor(base, a)
            rep = is_lambda_natural(s, t, n, ctx.rng, ctx.cfg, ctx.tol)
            if not rep.passed:
                return Report(False, rep.max_deviation, n, "constant form lost naturality")
            if float(np.linalg.norm(rep.witness_matrix - a)) > ctx.tol:
                return Report(False, 1.0, n, "witness differs from the constant form")
        return Report(True, 0.0, n, "")

    def point_fiber_degeneration(ctx: RunContext) -> Report:
        degen = dataclasses.replace(s, fiber_split=(4, 4), name="punctured-2-point-fiber")
        n = max(20, ctx.samples // 4)
        for t, expected in ((t_const, True), (poly, False)):
            fib = is_fibration_natural(degen, t, n, ctx.rng, ctx.cfg, ctx.tol)
            lam = is_lambda_natural(s, t, n, ctx.rng, ctx.cfg, ctx.tol)
            if fib.passed != lam.passed or fib.passed != expected:
                return Report(False, float("inf"), n, f"{t.name}: verdicts diverge")
        return Report(True, 0.0, n, "")

    def atlas_accepts_only_null(ctx: RunContext) -> Report:
        n = max(20, ctx.samples // 4)
        reject = is_atlas_natural(atlas, t_diag, n, ctx.rng, ctx.cfg, ctx.tol)
        accept = is_atlas_natural(atlas, null, n, ctx.rng, ctx.cfg, ctx.tol)
        if reject.passed:
            return Report(False, reject.max_deviation, n, "nonzero form accepted by both members")
        if reject.max_deviation <= 10 * ctx.tol:
            return Report(False, reject.max_deviation, n, "rejection was not decisive")
        if not accept.passed:
            return Report(False, accept.max_deviation, n, "null tensor rejected")
        return Report(True, reject.max_deviation, n, "")

    def weak_naturality_witnesses(ctx: RunContext) -> Report:
        n = max(20, ctx.samples // 4)
        first = is_weak_natural(atlas, t_diag, n, ctx.rng, ctx.cfg, ctx.tol)
        if not (first.passed and first.detail.startswith("member 0")):
            return Report(False, first.max_deviation, n, f"got {first.detail!r}")
        second = is_weak_natural(atlas, inv_scaled, n, ctx.rng, ctx.cfg, ctx.tol)
        if not (second.passed and second.detail.startswith("member 1")):
            return Report(False, second.max_deviation, n, f"got {second.detail!r}")
        return Report(True, 0.0, n, "")

    checks = (
        Check("rigidity", "frames move by a point-independent group representation", "structure", rigidity_run(s)),
        Check("dimension-identity", "dim N = dim M + dim O - stabilizer dim, stabilizer dim 2", "structure", dimension_run(s, 2)),
        Check("subspace-dimension-identity", "the line construction has stabilizer dim 2 as well", "structure", dimension_run(sub, 2)),
        Check("fiber-transitivity", "group carries any fiber point to the section point", "structure", transitivity_run(s)),
        Check("roundtrip-tensor", "tensor to matrix map and back is the identity", "correspondence", roundtrip_tensor_run(s, t_const)),
        Check("roundtrip-matrix", "fiber-constant matrix maps correspond to tensors", "correspondence", roundtrip_matrix_run(s, base_matrix_map)),
        Check("rep-invariance", "representations are fiber-constant here", "correspondence", invariance_run(s, poly)),
        Check("invariance-rejects-fiber-dependence", "a fiber-dependent map cannot be equivariant with trivial base change", "correspondence", planted_invariance_run(s, fiber_dependent_map)),
        Check("canonical-frames-morphism", "reading off the frames is a morphism into all linear frames", "morphisms", morphism_run(m_gamma)),
        Check("canonical-frames-linking", "the canonical map links frames by the identity", "morphisms", gamma_linking_identity),
        Check("canonical-frames-cocycle", "canonical linking maps satisfy the cocycle law", "morphisms", cocycle_run(m_gamma)),
        Check("canonical-frames-pullback", "representations agree through the canonical map", "morphisms", pullback_law_run(m_gamma, poly)),
        Check("line-subspace-morphism", "the invariant line includes as a frame subspace", "morphisms", morphism_run(m_sub)),
        Check("line-subspace-overmap", "the line inclusion has constant over-map", "morphisms", lambda ctx: is_subsspace(m_sub, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)),
        Check("line-subspace-cocycle", "line inclusion linking maps satisfy the cocycle law", "morphisms", cocycle_run(m_sub)),
        Check("line-subspace-pullback", "representations pull back along the line inclusion", "morphisms", pullback_law_run(m_sub, poly)),
        Check("subspace-inherits-naturality", "tensors natural upstairs stay natural on the subspace", "morphisms", sub_inherits_naturality),
        Check("connection-laws", "the product splitting is idempotent, vertical, equivariant", "connections", connection_run(conn)),
        Check("coframe-duality", "lifted frames and fundamental fields are dual to the coframes", "connections", coframe_duality_run(conn, good_algebra)),
        Check("theta-equivariance", "the soldering coframe transforms by the base change", "connections", theta_equivariance_run(s)),
        Check("global-frame-good-span", "generators meeting no stabilizer give a global frame", "connections", lambda ctx: global_frame_check(conn, good_algebra, max(3, ctx.samples // 20), ctx.rng, ctx.cfg)),
        Check("global-frame-rejects-degenerate", "generators inside a stabilizer drop rank", "connections", degenerate_span_detected),
        Check("stabilizer-field-vanishes", "fundamental fields of stabilizer directions vanish", "connections", stabilizer_field_vanishes),
        Check("constant-forms-natural", "every constant form is natural for constant frames", "naturality", constant_forms_natural),
        Check("poly-not-natural", "a position-dependent tensor is not natural", "naturality", natural_run(s, poly, False)),
        Check("scaled-form-never-natural", "a bump-scaled nonzero form is never natural", "naturality", natural_run(s, t_scaled, False)),
        Check("fibration-matches-constant", "fiber-only dependence coincides with constancy here", "naturality", fibration_natural_run(s, t_const, True)),
        Check("fibration-rejects-base-dependence", "base-dependent tensors fail fiber-only dependence", "naturality", fibration_natural_run(s, poly, False)),
        Check("point-fiber-degeneration", "an empty fiber slice reduces fibration naturality to constancy", "naturality", point_fiber_degeneration),
        Check("two-member-atlas-valid", "the scaling pair assembles into an atlas", "naturality", lambda ctx: validate_atlas(atlas, max(10, ctx.samples // 10), ctx.rng, ctx.cfg, ctx.tol)),
        Check("atlas-accepts-only-null", "only the null tensor is natural in both members", "naturality", atlas_accepts_only_null),
        Check("weak-naturality-witnesses", "weak naturality reports which member accepted the tensor", "naturality", weak_naturality_witnesses),
    )

    return CatalogEntry(
        name="punctured-2",
        summary="constant frames with a punctured-plane fiber; the action has 2-dim stabilizers",
        checks=checks,
        objects={
            "sspace": s,
            "sub": sub,
            "ambient": lm,
            "planted": t_const,
            "diag": t_diag,
            "poly": poly,
            "atlas": atlas,
            "morphisms": {"gamma": m_gamma, "line": m_sub},
            "overid_sweeps": [(m_gamma, poly), (m_sub, poly)],
        },
    )


# ---------------------------------------------------------------------------
# minkowski-p51: diagonalizing frames of constant-signature forms


def build_minkowski() -> CatalogEntry:
    base = euclidean(2, name="R^2")
    t_mink = constant_matrix_tensor(base, np.diag([1.0, -1.0]), name="lorentz-form")
    t_deg = constant_matrix_tensor(base, np.diag([1.0, 0.0]), name="rank-one-form")

    def varying(p: PointOn, u: Tangent, v: Tangent) -> float:
        a = np.diag([1.0, p.coords[0]])
        return float(u.vec @ a @ v.vec)

    t_vary = Tensor02Field(base, varying, name="sign-flipping-form", symmetric=True)

    def build_plane(rng: np.random.Generator) -> SSpace:
        return constant_signature_sspace(base, t_mink, positives=1, rank=2, rng=rng, name="minkowski-frames")

    def build_rank_one(rng: np.random.Generator) -> SSpace:
        return constant_signature_sspace(base, t_deg, positives=1, rank=1, rng=rng, name="rank-one-frames")

    def plane_rep_constant(ctx: RunContext) -> Report:
        space = build_plane(ctx.rng)
        worst = 0.0
        count = max(10, ctx.samples // 4)
        expected = np.diag([1.0, -1.0])
        for _ in range(count):
            z = random_point(space.total, ctx.rng)
            worst = max(worst, float(np.linalg.norm(matrix_rep(space, t_mink, z, ctx.cfg) - expected)))
        nat = is_lambda_natural(space, t_mink, max(20, ctx.samples // 4), ctx.rng, ctx.cfg, ctx.tol)
        if not nat.passed:
            return Report(False, nat.max_deviation, count, "normal form is not constant")
        return ok(worst, ctx.tol, count)

    def rank_one_rep_constant(ctx: RunContext) -> Report:
        space = build_rank_one(ctx.rng)
        worst = 0.0
        count = max(10, ctx.samples // 4)
        expected = np.diag([1.0, 0.0])
        for _ in range(count):
            z = random_point(space.total, ctx.rng)
            worst = max(worst, float(np.linalg.norm(matrix_rep(space, t_deg, z, ctx.cfg) - expected)))
        return ok(worst, ctx.tol, count)

    def plane_structure(ctx: RunContext) -> Report:
        space = build_plane(ctx.rng)
        rig = verify_rigidity(space, max(10, ctx.samples // 4), ctx.rng, ctx.cfg, ctx.tol)
        if not rig.passed:
            return rig
        dim = dimension_run(space, 0)(ctx)
        if not dim.passed:
            return dim
        return transitivity_run(space)(ctx)

    def rank_one_structure(ctx: RunContext) -> Report:
        space = build_rank_one(ctx.rng)
        rig = verify_rigidity(space, max(10, ctx.samples // 4), ctx.rng, ctx.cfg, ctx.tol)
        if not rig.passed:
            return rig
        return dimension_run(space, 0)(ctx)

    def plane_invariance(ctx: RunContext) -> Report:
        space = build_plane(ctx.rng)
        return invariance_run(space, t_mink)(ctx)

    def varying_rejected(ctx: RunContext) -> Report:
        return expect_raises(
            SignatureMismatch,
            lambda: constant_signature_sspace(base, t_vary, positives=1, rank=2, rng=ctx.rng),
        )

    checks = (
        Check("plane-frames-structure", "diagonalizing frames form a rigid transitive frame space", "structure", plane_structure),
        Check("rank-one-frames-structure", "the rank-one construction keeps the dimension identity", "structure", rank_one_structure),
        Check("varying-signature-rejected", "a sign-flipping form has no constant-signature frame space", "structure", varying_rejected),
        Check("plane-rep-invariance", "the normal-form representation is equivariant", "correspondence", plane_invariance),
        Check("plane-normal-form", "the form is constantly diag(1, -1) in its diagonalizing frames", "naturality", plane_rep_constant),
        Check("rank-one-normal-form", "the degenerate form is constantly diag(1, 0)", "naturality", rank_one_rep_constant),
    )

    return CatalogEntry(
        name="minkowski-p51",
        summary="diagonalizing frames that make a constant-signature form constant",
        checks=checks,
        objects={
            "build_plane": build_plane,
            "build_rank_one": build_rank_one,
            "lorentz": t_mink,
            "rank_one": t_deg,
            "sign_flipping": t_vary,
        },
    )


def entries() -> list[CatalogEntry]:
    return [build_lm(), build_oframes(), build_punctured(), build_minkowski()]
