"""Group translations as frame spaces over SO(3).

Three variants over the same base: a pair of group slots composing by
multiplication (frames never move, the base change is the identity), a
slot carrying a running change of algebra basis (base change GL(3)), and
an orthonormal version of the latter (base change O(3)).  Left-invariant
metrics read differently in each: constant, fiber-quadratic, and
fiber-quadratic-orthogonal.
"""

from __future__ import annotations

import numpy as np

from ..core import SSpace, matrix_rep, tensor_from_matrix
from ..geometry import (
    Manifold,
    PointOn,
    SmoothMap,
    Tangent,
    Tensor02Field,
    constant_matrix_tensor,
    product_manifold,
    random_point,
    scale_tensor,
)
from ..groups import general_linear, group_manifold, orthogonal, special_orthogonal
from ..morphisms import SSpaceMorphism, comes_from_tensor, iterate_pullback, linking_map
from ..naturality import depends_only_on_split
from ..report import Report
from .base import (
    CatalogEntry,
    Check,
    RunContext,
    cocycle_run,
    dimension_run,
    expect_failure,
    fibration_natural_run,
    identity_coords_link,
    invariance_run,
    iterate_equivalence_run,
    morphism_run,
    natural_run,
    ok,
    pullback_law_run,
    rep_value_run,
    rigidity_run,
    roundtrip_tensor_run,
    transitivity_run,
)

V3 = (
    np.array([[0.0, 0, 0], [0, 0, -1.0], [0, 1.0, 0]]),
    np.array([[0.0, 0, 1.0], [0, 0, 0], [-1.0, 0, 0]]),
    np.array([[0.0, -1.0, 0], [1.0, 0, 0], [0, 0, 0]]),
)

A0 = np.diag([1.0, 2.0, 3.0])


def _coeffs(k: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """Coefficients of k^T vec in the rotation-generator basis."""
    w = k.T @ np.asarray(vec, dtype=float).reshape(3, 3)
    return np.array(
        [(w[2, 1] - w[1, 2]) / 2, (w[0, 2] - w[2, 0]) / 2, (w[1, 0] - w[0, 1]) / 2]
    )


def _mat(c: np.ndarray) -> np.ndarray:
    return c[0] * V3[0] + c[1] * V3[1] + c[2] * V3[2]


def left_invariant_metric(base: Manifold, a: np.ndarray, name: str) -> Tensor02Field:
    a = np.asarray(a, dtype=float)

    def ev(p: PointOn, u: Tangent, v: Tangent) -> float:
        k = p.coords.reshape(3, 3)
        return float(_coeffs(k, u.vec) @ a @ _coeffs(k, v.vec))

    return Tensor02Field(base, ev, name=name, symmetric=bool(np.allclose(a, a.T)))


# ---------------------------------------------------------------------------
# liegroup-pair-so3: two slots composing by multiplication


def pair_sspace(basis_change: np.ndarray | None = None) -> SSpace:
    so3 = special_orthogonal(3)
    total = product_manifold(
        [group_manifold(so3, name="slot-1"), group_manifold(so3, name="slot-2")],
        name="SO(3) x SO(3)",
    )
    base = group_manifold(so3)
    gens = V3 if basis_change is None else tuple(_mat(col) for col in np.asarray(basis_change, dtype=float).T)

    def psi_fn(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return (x[:9].reshape(3, 3) @ x[9:].reshape(3, 3)).ravel()

    def psi_jac(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        g, h = x[:9].reshape(3, 3), x[9:].reshape(3, 3)
        jac = np.zeros((9, 18))
        for i in range(3):
            for j in range(3):
                r = 3 * i + j
                for l in range(3):
                    jac[r, 3 * i + l] = h[l, j]
                    jac[r, 9 + 3 * l + j] = g[i, l]
        return jac

    psi = SmoothMap(total, base, psi_fn, jacobian=psi_jac, name="compose")

    def action(z: PointOn, a) -> PointOn:
        a = np.asarray(a, dtype=float)
        g, h = z.coords[:9].reshape(3, 3), z.coords[9:].reshape(3, 3)
        return PointOn(total, np.concatenate([(g @ a).ravel(), (a.T @ h).ravel()]))

    def frames(z: PointOn) -> np.ndarray:
        k = z.coords[:9].reshape(3, 3) @ z.coords[9:].reshape(3, 3)
        return np.array([(k @ v).ravel() for v in gens])

    def fiber_section(p: PointOn) -> PointOn:
        return PointOn(total, np.concatenate([p.coords, np.eye(3).ravel()]))

    def witness(z: PointOn, zbar: PointOn) -> np.ndarray:
        return z.coords[:9].reshape(3, 3).T @ zbar.coords[:9].reshape(3, 3)

    name = "liegroup-pair-so3" if basis_change is None else "liegroup-pair-so3-rebased"
    return SSpace(
        name=name,
        total=total,
        base=base,
        group=so3,
        psi=psi,
        action=action,
        frames=frames,
        fiber_section=fiber_section,
        fiber_split=(0, 9),
        witness_finder=witness,
        analytic=True,
    )


def build_pair() -> CatalogEntry:
    s = pair_sspace()
    li = left_invariant_metric(s.base, A0, "left-invariant-123")
    p_mat = np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 2.0]])
    s_prime = pair_sspace(basis_change=p_mat)
    m_p = identity_coords_link(s, s_prime, "generator-rebase")

    def every_constant_comes_from(ctx: RunContext) -> Report:
        worst = 0.0
        probes = max(5, ctx.samples // 10)
        for _ in range(3):
            x = ctx.rng.normal(size=(3, 3))
            t = tensor_from_matrix(
                s, lambda z, x=x: x, samples=15, rng=ctx.rng, cfg=ctx.cfg, tol=ctx.tol,
            )
            for _ in range(probes):
                z = random_point(s.total, ctx.rng)
                worst = max(worst, float(np.linalg.norm(matrix_rep(s, t, z, ctx.cfg) - x)))
        return ok(worst, ctx.tol, 3 * probes)

    def linking_is_rebase(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(5, ctx.samples // 10)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            worst = max(worst, float(np.linalg.norm(linking_map(m_p, z, ctx.cfg) - p_mat)))
        return ok(worst, ctx.tol, count)

    def iterate_value(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(3, ctx.samples // 20)
        p3 = np.linalg.matrix_power(p_mat, 3)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            val = iterate_pullback(m_p, li, 3, z, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)
            worst = max(worst, float(np.linalg.norm(val - p3.T @ A0 @ p3)))
        return ok(worst, ctx.tol, count)

    def comes_from_positive(ctx: RunContext) -> Report:
        return comes_from_tensor(m_p, li, ctx.samples, ctx.rng, ctx.cfg, ctx.tol)

    checks = (
        Check("rigidity", "composed translates leave the frames fixed along fibers", "structure", rigidity_run(s)),
        Check("dimension-identity", "dim N = dim SO(3) + dim SO(3), free action", "structure", dimension_run(s, 0)),
        Check("fiber-transitivity", "the first slot absorbs any fiber motion", "structure", transitivity_run(s)),
        Check("roundtrip-tensor", "tensor to matrix map and back is the identity", "correspondence", roundtrip_tensor_run(s, li)),
        Check("rep-invariance", "representations are constant along fibers", "correspondence", invariance_run(s, li)),
        Check("constant-maps-are-tensors", "any constant matrix map determines a tensor field", "correspondence", every_constant_comes_from),
        Check("rebase-morphism", "changing the generator basis is a morphism over the identity", "morphisms", morphism_run(m_p)),
        Check("rebase-cocycle", "the rebase linking map satisfies the cocycle law", "morphisms", cocycle_run(m_p)),
        Check("rebase-pullback", "representations pull back by congruence with the rebase matrix", "morphisms", pullback_law_run(m_p, li)),
        Check("rebase-linking-value", "the linking map is the constant basis-change matrix", "morphisms", linking_is_rebase),
        Check("iterate-value", "iterated pullbacks congruence-power the representation", "morphisms", iterate_value),
        Check("iterate-consistency", "iterate invariance at a power forces plain invariance", "morphisms", iterate_equivalence_run(m_p, li, 2)),
        Check("pullback-stays-tensor", "pulled-back representations remain equivariant", "morphisms", comes_from_positive),
        Check("li-rep-value", "the left-invariant metric reads as its coefficient matrix", "naturality", rep_value_run(s, li, A0)),
        Check("li-natural", "left-invariant metrics have constant representations here", "naturality", natural_run(s, li, True)),
    )

    return CatalogEntry(
        name="liegroup-pair-so3",
        summary="two rotation slots composing by multiplication; frames are immobile along fibers",
        checks=checks,
        objects={
            "sspace": s,
            "rebased": s_prime,
            "metric": li,
            "morphisms": {"rebase": m_p},
            "overid_sweeps": [(m_p, li)],
        },
    )


# ---------------------------------------------------------------------------
# liegroup-bases-so3 and liegroup-ortho-so3: a slot of algebra bases


def bases_sspace(grp_name: str) -> SSpace:
    so3 = special_orthogonal(3)
    grp = general_linear(3) if grp_name == "gl" else orthogonal(3)
    total = product_manifold(
        [group_manifold(so3, name="rotation"), group_manifold(grp, name="basis-slot")],
        name=f"SO(3) x {grp.name}",
    )
    base = group_manifold(so3)

    def psi_fn(x: np.ndarray) -> np.ndarray:
        return np.asarray(x, dtype=float)[:9]

    def psi_jac(x: np.ndarray) -> np.ndarray:
        return np.hstack([np.eye(9), np.zeros((9, 9))])

    psi = SmoothMap(total, base, psi_fn, jacobian=psi_jac, name="anchor")

    def action(z: PointOn, a) -> PointOn:
        a = np.asarray(a, dtype=float)
        v = z.coords[9:].reshape(3, 3)
        return PointOn(total, np.concatenate([z.coords[:9], (v @ a).ravel()]))

    def frames(z: PointOn) -> np.ndarray:
        g, v = z.coords[:9].reshape(3, 3), z.coords[9:].reshape(3, 3)
        return np.array([(g @ _mat(v[:, i])).ravel() for i in range(3)])

    def fiber_section(p: PointOn) -> PointOn:
        return PointOn(total, np.concatenate([p.coords, np.eye(3).ravel()]))

    def witness(z: PointOn, zbar: PointOn) -> np.ndarray:
        v = z.coords[9:].reshape(3, 3)
        vbar = zbar.coords[9:].reshape(3, 3)
        return np.linalg.solve(v, vbar)

    return SSpace(
        name=f"liegroup-{'bases' if grp_name == 'gl' else 'ortho'}-so3",
        total=total,
        base=base,
        group=grp,
        psi=psi,
        action=action,
        frames=frames,
        fiber_section=fiber_section,
        fiber_split=(9, 18),
        witness_finder=witness,
        analytic=True,
    )


def build_bases() -> CatalogEntry:
    s = bases_sspace("gl")
    li = left_invariant_metric(s.base, A0, "left-invariant-123")
    non_li = scale_tensor(
        li, lambda x: 1.0 + 0.1 * float(np.trace(x.reshape(3, 3))), name="trace-scaled",
    )
    null = constant_matrix_tensor(s.base, np.zeros((9, 9)), name="null")

    m_collapse = _collapse_morphism(s)

    def rep_factorization(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(5, ctx.samples // 4)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            v = z.coords[9:].reshape(3, 3)
            worst = max(
                worst,
                float(np.linalg.norm(matrix_rep(s, li, z, ctx.cfg) - v.T @ A0 @ v)),
            )
        return ok(worst, ctx.tol, count)

    def linking_inverts_slot(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(5, ctx.samples // 10)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            v = z.coords[9:].reshape(3, 3)
            worst = max(
                worst,
                float(np.linalg.norm(linking_map(m_collapse, z, ctx.cfg) - np.linalg.inv(v))),
            )
        return ok(worst, ctx.tol, count)

    def pullback_leaves_tensors(ctx: RunContext) -> Report:
        return expect_failure(
            comes_from_tensor(m_collapse, li, ctx.samples, ctx.rng, ctx.cfg, ctx.tol), ctx.tol
        )

    checks = (
        Check("rigidity", "frames transform by the running basis change", "structure", rigidity_run(s)),
        Check("dimension-identity", "dim N = dim SO(3) + dim GL(3), free action", "structure", dimension_run(s, 0)),
        Check("fiber-transitivity", "the basis slot absorbs any fiber motion", "structure", transitivity_run(s)),
        Check("roundtrip-tensor", "tensor to matrix map and back is the identity", "correspondence", roundtrip_tensor_run(s, li)),
        Check("rep-invariance", "representations transform by congruence with the base change", "correspondence", invariance_run(s, li)),
        Check("li-rep-factorizes", "the left-invariant representation is the slot gram of its coefficients", "correspondence", rep_factorization),
        Check("collapse-morphism", "resetting the basis slot is a morphism over the identity", "morphisms", morphism_run(m_collapse)),
        Check("collapse-cocycle", "the collapse linking map satisfies the cocycle law", "morphisms", cocycle_run(m_collapse)),
        Check("collapse-linking-value", "the collapse linking map inverts the basis slot", "morphisms", linking_inverts_slot),
        Check("pullback-can-leave-tensors", "pulling back through the collapse breaks equivariance", "morphisms", pullback_leaves_tensors),
        Check("li-not-natural", "the left-invariant metric varies with the basis slot", "naturality", natural_run(s, li, False)),
        Check("null-natural", "only the null form is constant over all bases", "naturality", natural_run(s, null, True)),
        Check("li-fiber-dependence", "the left-invariant representation depends only on the slot", "naturality", fibration_natural_run(s, li, True)),
        Check("scaled-fiber-dependence-fails", "a point-scaled metric leaks base dependence", "naturality", fibration_natural_run(s, non_li, False)),
    )

    return CatalogEntry(
        name="liegroup-bases-so3",
        summary="running algebra bases over rotations; the base change is the full linear group",
        checks=checks,
        objects={
            "sspace": s,
            "metric": li,
            "scaled": non_li,
            "morphisms": {"collapse": m_collapse},
            "overid_sweeps": [(m_collapse, li)],
        },
    )


def _collapse_morphism(s: SSpace) -> SSpaceMorphism:
    def f_fn(x: np.ndarray) -> np.ndarray:
        return np.concatenate([np.asarray(x, dtype=float)[:9], np.eye(3).ravel()])

    def f_jac(x: np.ndarray) -> np.ndarray:
        jac = np.zeros((18, 18))
        jac[:9, :9] = np.eye(9)
        return jac

    return SSpaceMorphism(
        source=s,
        target=s,
        f=SmoothMap(s.total, s.total, f_fn, jacobian=f_jac, name="reset-slot"),
        tau=lambda a: np.eye(3),
        name="slot-collapse",
    )


def build_ortho() -> CatalogEntry:
    s = bases_sspace("ortho")
    li = left_invariant_metric(s.base, A0, "left-invariant-123")
    li_scaled = left_invariant_metric(s.base, 2.0 * np.eye(3), "left-invariant-2I")
    tr_tensor = scale_tensor(
        left_invariant_metric(s.base, np.eye(3), "left-invariant-id"),
        lambda x: 1.0 + 0.1 * float(np.trace(x.reshape(3, 3))),
        name="trace-conformal",
    )

    def rep_factorization(ctx: RunContext) -> Report:
        worst = 0.0
        count = max(5, ctx.samples // 4)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            xi = z.coords[9:].reshape(3, 3)
            worst = max(
                worst,
                float(np.linalg.norm(matrix_rep(s, li, z, ctx.cfg) - xi.T @ A0 @ xi)),
            )
        return ok(worst, ctx.tol, count)

    def trace_depends_on_anchor(ctx: RunContext) -> Report:
        return depends_only_on_split(s, tr_tensor, (0, 9), ctx.samples, ctx.rng, ctx.cfg, ctx.tol)

    checks = (
        Check("rigidity", "frames transform by the orthogonal basis change", "structure", rigidity_run(s)),
        Check("dimension-identity", "dim N = dim SO(3) + dim O(3), free action", "structure", dimension_run(s, 0)),
        Check("fiber-transitivity", "the orthonormal slot absorbs any fiber motion", "structure", transitivity_run(s)),
        Check("roundtrip-tensor", "tensor to matrix map and back is the identity", "correspondence", roundtrip_tensor_run(s, li)),
        Check("rep-invariance", "representations transform by congruence with the base change", "correspondence", invariance_run(s, li)),
        Check("li-rep-factorizes", "the left-invariant representation is the slot congruence of its coefficients", "correspondence", rep_factorization),
        Check("conformal-natural", "multiples of the invariant dot form stay constant over orthonormal bases", "naturality", natural_run(s, li_scaled, True)),
        Check("conformal-value", "the doubled invariant dot form reads as twice the identity", "naturality", rep_value_run(s, li_scaled, 2.0 * np.eye(3))),
        Check("li-not-natural", "an anisotropic left-invariant metric still varies with the slot", "naturality", natural_run(s, li, False)),
        Check("li-fiber-dependence", "the anisotropic representation depends only on the slot", "naturality", fibration_natural_run(s, li, True)),
        Check("trace-depends-on-anchor", "the trace-conformal representation depends only on the anchor point", "naturality", trace_depends_on_anchor),
        Check("trace-fiber-dependence-fails", "the trace-conformal representation is not slot-only", "naturality", fibration_natural_run(s, tr_tensor, False)),
        Check("trace-not-natural", "the trace-conformal form is not constant", "naturality", natural_run(s, tr_tensor, False)),
    )

    return CatalogEntry(
        name="liegroup-ortho-so3",
        summary="orthonormal algebra bases over rotations; the base change is the orthogonal group",
        checks=checks,
        objects={"sspace": s, "metric": li, "conformal": li_scaled, "overid_sweeps": []},
    )


def entries() -> list[CatalogEntry]:
    return [build_pair(), build_bases(), build_ortho()]
