"""Catalog plumbing: entries, per-check contexts, and shared check builders.

Each catalog entry owns a tuple of named checks grouped into suites; a
check is a closure from a run context (sample count, tolerances, rng) to
a Report.  Builders below cover the verifications that recur across
instances; anything instance-specific lives with the instance.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from ..config import DEFAULT, DiffConfig
from ..connections import (
    SSpaceConnection,
    coframe_theta,
    coframe_w,
    fundamental_vertical_field,
    global_frame_check,
    horizontal_lift,
    verify_connection,
)
from ..core import (
    MatrixMap,
    SSpace,
    act,
    dimension_identity,
    extract_base_change,
    frame_rows,
    matrix_rep,
    stabilizer_dim,
    tensor_from_matrix,
    verify_rigidity,
)
from ..geometry import PointOn, Tangent, Tensor02Field, random_point, random_tangent
from ..groups import AlgebraElement, random_element
from ..morphisms import SSpaceMorphism, comes_from_tensor, linking_map, verify_morphism
from ..naturality import is_fibration_natural, is_lambda_natural
from ..numerics import differential
from ..report import Report

SUITES = ("structure", "correspondence", "morphisms", "connections", "naturality")


@dataclass
class RunContext:
    """Knobs of a single check run."""

    samples: int
    tol: float
    fd_tol: float
    rng: np.random.Generator
    cfg: DiffConfig = DEFAULT

    def tolerance(self, fd: bool) -> float:
        return self.fd_tol if fd else self.tol


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    suite: str
    run: Callable[[RunContext], Report]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    summary: str
    checks: tuple[Check, ...]
    objects: dict = field(default_factory=dict)

    def suite_checks(self, suite: str) -> tuple[Check, ...]:
        if suite == "all":
            return self.checks
        return tuple(c for c in self.checks if c.suite == suite)


def stable_seed(seed: int, label: str) -> int:
    """Deterministic per-check seed derived from the run seed and a label."""
    digest = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def ok(dev: float, tol: float, samples: int, detail: str = "") -> Report:
    return Report(passed=dev <= tol, max_deviation=float(dev), samples=samples, detail=detail)


def expect_failure(report: Report, tol: float, margin: float = 10.0) -> Report:
    """Wrap a verification of a planted violation: it must fail decisively."""
    decisive = (not report.passed) and report.max_deviation > margin * tol
    detail = "violated as expected" if decisive else "expected a decisive failure"
    return Report(
        passed=decisive,
        max_deviation=report.max_deviation,
        samples=report.samples,
        detail=detail,
    )


def expect_raises(exc_type, fn: Callable[[], Any]) -> Report:
    try:
        fn()
    except exc_type as exc:
        return Report(passed=True, max_deviation=0.0, samples=1, detail=str(exc)[:160])
    except Exception as exc:  # noqa: BLE001 - wrong error class is a failure, not a crash
        return Report(
            passed=False,
            max_deviation=float("inf"),
            samples=1,
            detail=f"raised {type(exc).__name__} instead of {exc_type.__name__}",
        )
    return Report(
        passed=False,
        max_deviation=float("inf"),
        samples=1,
        detail=f"{exc_type.__name__} was not raised",
    )


# ---------------------------------------------------------------------------
# Shared construction helpers.


def rot2(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def projection_map(total, base, name: str = "anchor"):
    """Coordinate projection onto the leading base slice, with its jacobian."""
    from ..geometry import SmoothMap

    amb = base.ambient_dim

    def jac(x: np.ndarray) -> np.ndarray:
        j = np.zeros((amb, total.ambient_dim))
        j[:, :amb] = np.eye(amb)
        return j

    return SmoothMap(
        total, base, lambda x: np.asarray(x, dtype=float)[:amb], jacobian=jac, name=name
    )


def identity_coords_link(src: SSpace, tgt: SSpace, name: str, tau=None) -> SSpaceMorphism:
    """Morphism whose total map is the identity on shared coordinates."""
    from ..geometry import SmoothMap

    f = SmoothMap(
        src.total,
        tgt.total,
        lambda x: np.asarray(x, dtype=float),
        jacobian=lambda x: np.eye(src.total.ambient_dim),
        name=name,
    )
    return SSpaceMorphism(
        source=src, target=tgt, f=f, tau=(tau if tau is not None else (lambda a: a)), name=name
    )


def right_translation_automorphism(s: SSpace, a0: np.ndarray, name: str) -> SSpaceMorphism:
    """Right translation by a0 paired with conjugation of the group."""
    from ..geometry import SmoothMap

    a0 = np.asarray(a0, dtype=float)
    a0_inv = np.linalg.inv(a0)

    def coord_fn(x: np.ndarray) -> np.ndarray:
        return act(s, PointOn(s.total, np.asarray(x, dtype=float)), a0).coords

    f = SmoothMap(s.total, s.total, coord_fn, name=name)
    return SSpaceMorphism(
        source=s, target=s, f=f, tau=lambda b: a0_inv @ np.asarray(b, dtype=float) @ a0, name=name
    )


# ---------------------------------------------------------------------------
# Shared check builders.  Each returns a run callable.


def rigidity_run(s: SSpace, fd: bool = False):
    def run(ctx: RunContext) -> Report:
        return verify_rigidity(s, ctx.samples, ctx.rng, ctx.cfg, ctx.tolerance(fd))

    return run


def transitivity_run(s: SSpace, fd: bool = False):
    """witness_finder carries any point to the section point over the same base."""

    def run(ctx: RunContext) -> Report:
        tol = ctx.tolerance(fd)
        worst = 0.0
        count = max(5, ctx.samples // 10)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            zbar = s.fiber_section(s.psi.eval(z))
            a = s.witness_finder(z, zbar)
            if not s.group.membership(a, 1e-6):
                return Report(False, float("inf"), count, "witness value left the group")
            moved = act(s, z, a)
            worst = max(worst, float(np.linalg.norm(moved.coords - zbar.coords)))
        return ok(worst, tol, count)

    return run


def admits_run(s: SSpace, a_matrix: np.ndarray, expected: bool, fd: bool = False):
    """Whether the constant form a_matrix is preserved by every base change."""
    a_matrix = np.asarray(a_matrix, dtype=float)

    def run(ctx: RunContext) -> Report:
        from ..core import admits_constant_rep

        rep = admits_constant_rep(s, a_matrix, ctx.samples, ctx.rng, ctx.cfg, ctx.tolerance(fd))
        if expected:
            return rep
        return expect_failure(rep, ctx.tolerance(fd))

    return run


def dimension_run(s: SSpace, expected_stab: int):
    def run(ctx: RunContext) -> Report:
        rep = dimension_identity(s, max(5, ctx.samples // 10), ctx.rng, ctx.cfg)
        stab = stabilizer_dim(s, random_point(s.total, ctx.rng), ctx.cfg)
        if stab != expected_stab:
            return Report(
                passed=False,
                max_deviation=float(abs(stab - expected_stab)),
                samples=rep.samples,
                detail=f"stabilizer dim {stab}, expected {expected_stab}",
            )
        return rep

    return run


def roundtrip_tensor_run(s: SSpace, t: Tensor02Field, fd: bool = False):
    """tensor -> representation -> tensor, compared at random arguments."""

    def run(ctx: RunContext) -> Report:
        tol = ctx.tolerance(fd)
        f = MatrixMap(s, lambda z: matrix_rep(s, t, z, ctx.cfg))
        t2 = tensor_from_matrix(
            s, f, samples=min(40, ctx.samples), rng=ctx.rng, cfg=ctx.cfg, tol=tol
        )
        worst = 0.0
        for _ in range(ctx.samples):
            p = random_point(s.base, ctx.rng)
            u = random_tangent(p, ctx.rng)
            v = random_tangent(p, ctx.rng)
            a, b = t.eval(p, u, v), t2.eval(p, u, v)
            worst = max(worst, abs(a - b) / max(1.0, abs(a)))
        return ok(worst, tol, ctx.samples)

    return run


def roundtrip_matrix_run(s: SSpace, f_eval: Callable[[PointOn], np.ndarray], fd: bool = False):
    """matrix map -> tensor -> representation, compared at random points."""

    def run(ctx: RunContext) -> Report:
        tol = ctx.tolerance(fd)
        t = tensor_from_matrix(
            s, f_eval, samples=min(40, ctx.samples), rng=ctx.rng, cfg=ctx.cfg, tol=tol
        )
        worst = 0.0
        for _ in range(ctx.samples):
            z = random_point(s.total, ctx.rng)
            a = np.asarray(f_eval(z), dtype=float)
            b = matrix_rep(s, t, z, ctx.cfg)
            worst = max(worst, float(np.linalg.norm(a - b)) / max(1.0, float(np.linalg.norm(a))))
        return ok(worst, tol, ctx.samples)

    return run


def invariance_run(s: SSpace, t: Tensor02Field, fd: bool = False):
    def run(ctx: RunContext) -> Report:
        from ..core import check_invariance

        f = lambda z: matrix_rep(s, t, z, ctx.cfg)  # noqa: E731
        return check_invariance(s, f, ctx.samples, ctx.rng, ctx.cfg, ctx.tolerance(fd))

    return run


def planted_invariance_run(s: SSpace, f_eval: Callable[[PointOn], np.ndarray], fd: bool = False):
    """A non-equivariant matrix map must fail the invariance law decisively."""

    def run(ctx: RunContext) -> Report:
        from ..core import check_invariance

        rep = check_invariance(s, f_eval, ctx.samples, ctx.rng, ctx.cfg, ctx.tolerance(fd))
        return expect_failure(rep, ctx.tolerance(fd))

    return run


def vector_rep_run(s: SSpace, field_fn: Callable[[PointOn], Tangent], fd: bool = False):
    """Coefficient rows of a vector field transform by the inverse base change."""

    def run(ctx: RunContext) -> Report:
        from ..core import vector_rep

        tol = ctx.tolerance(fd)
        worst = 0.0
        for _ in range(ctx.samples):
            z = random_point(s.total, ctx.rng)
            a = random_element(s.group, ctx.rng).value
            l_mat = extract_base_change(s, a, z, ctx.cfg)
            c0 = vector_rep(s, field_fn, z, ctx.cfg)
            c1 = vector_rep(s, field_fn, act(s, z, a), ctx.cfg)
            worst = max(worst, float(np.linalg.norm(c1 - np.linalg.solve(l_mat, c0))))
        return ok(worst, tol, ctx.samples)

    return run


def morphism_run(m: SSpaceMorphism, fd: bool = False):
    def run(ctx: RunContext) -> Report:
        return verify_morphism(m, ctx.samples, ctx.rng, ctx.cfg, ctx.tolerance(fd))

    return run


def cocycle_run(m: SSpaceMorphism, fd: bool = False):
    """C(z . a) = L(a)^-1 C(z) L'(tau a) for over-identity morphisms."""

    def run(ctx: RunContext) -> Report:
        tol = ctx.tolerance(fd)
        worst = 0.0
        count = max(5, ctx.samples // 4)
        for _ in range(count):
            z = random_point(m.source.total, ctx.rng)
            a = random_element(m.source.group, ctx.rng).value
            c_z = linking_map(m, z, ctx.cfg)
            c_za = linking_map(m, act(m.source, z, a), ctx.cfg)
            l_src = extract_base_change(m.source, a, z, ctx.cfg)
            l_tgt = extract_base_change(m.target, m.tau(a), m.f.eval(z), ctx.cfg)
            pred = np.linalg.inv(l_src) @ c_z @ l_tgt
            worst = max(
                worst, float(np.linalg.norm(c_za - pred)) / max(1.0, float(np.linalg.norm(pred)))
            )
        return ok(worst, tol, count)

    return run


def pullback_law_run(m: SSpaceMorphism, t: Tensor02Field, fd: bool = False):
    """rep_target(f(z)) = C(z)^T rep_source(z) C(z) for a shared-base tensor."""

    def run(ctx: RunContext) -> Report:
        tol = ctx.tolerance(fd)
        worst = 0.0
        count = max(5, ctx.samples // 4)
        for _ in range(count):
            z = random_point(m.source.total, ctx.rng)
            direct = matrix_rep(m.target, t, m.f.eval(z), ctx.cfg)
            c = linking_map(m, z, ctx.cfg)
            via = c.T @ matrix_rep(m.source, t, z, ctx.cfg) @ c
            worst = max(
                worst,
                float(np.linalg.norm(direct - via)) / max(1.0, float(np.linalg.norm(direct))),
            )
        return ok(worst, tol, count)

    return run


def comes_from_run(m: SSpaceMorphism, t: Tensor02Field, expected: bool, fd: bool = False):
    def run(ctx: RunContext) -> Report:
        rep = comes_from_tensor(m, t, ctx.samples, ctx.rng, ctx.cfg, ctx.tolerance(fd))
        if expected:
            return rep
        return expect_failure(rep, ctx.tolerance(fd))

    return run


def natural_run(s: SSpace, t: Tensor02Field, expected: bool, fd: bool = False):
    def run(ctx: RunContext) -> Report:
        rep = is_lambda_natural(s, t, ctx.samples, ctx.rng, ctx.cfg, ctx.tolerance(fd))
        if expected:
            return Report(rep.passed, rep.max_deviation, rep.samples, rep.detail)
        return expect_failure(rep, ctx.tolerance(fd))

    return run


def fibration_natural_run(s: SSpace, t: Tensor02Field, expected: bool, fd: bool = False):
    def run(ctx: RunContext) -> Report:
        rep = is_fibration_natural(s, t, ctx.samples, ctx.rng, ctx.cfg, ctx.tolerance(fd))
        if expected:
            return Report(rep.passed, rep.max_deviation, rep.samples, rep.detail)
        return expect_failure(rep, ctx.tolerance(fd))

    return run


def rep_value_run(
    s: SSpace,
    t: Tensor02Field,
    expected: np.ndarray,
    at: Callable[[np.random.Generator], PointOn] | None = None,
    fd: bool = False,
):
    """Representation equals a pinned matrix, at random or prescribed points."""
    expected = np.asarray(expected, dtype=float)

    def run(ctx: RunContext) -> Report:
        tol = ctx.tolerance(fd)
        worst = 0.0
        count = max(5, ctx.samples // 4)
        for _ in range(count):
            z = at(ctx.rng) if at is not None else random_point(s.total, ctx.rng)
            rep = matrix_rep(s, t, z, ctx.cfg)
            worst = max(worst, float(np.linalg.norm(rep - expected)))
        return ok(worst, tol, count)

    return run


def connection_run(c: SSpaceConnection, fd: bool = True):
    def run(ctx: RunContext) -> Report:
        return verify_connection(c, max(5, ctx.samples // 10), ctx.rng, ctx.cfg, ctx.tolerance(fd))

    return run


def coframe_duality_run(c: SSpaceConnection, algebra: Sequence[AlgebraElement], fd: bool = True):
    """theta and W vanish/peak correctly on lifted frames and fundamental fields."""

    def run(ctx: RunContext) -> Report:
        s = c.sspace
        tol = ctx.tolerance(fd)
        worst = 0.0
        count = max(3, ctx.samples // 20)
        eye_n = np.eye(s.n)
        eye_k = np.eye(len(algebra))
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            p = s.psi.eval(z)
            rows = frame_rows(s, z)
            for i in range(s.n):
                h = horizontal_lift(c, Tangent(p, rows[i]), z, ctx.cfg).vec
                worst = max(worst, float(np.linalg.norm(coframe_theta(s, z, h, ctx.cfg) - eye_n[i])))
                worst = max(worst, float(np.linalg.norm(coframe_w(c, algebra, z, h, ctx.cfg))))
            for j, x in enumerate(algebra):
                v = fundamental_vertical_field(s, x, z, ctx.cfg)
                worst = max(worst, float(np.linalg.norm(coframe_theta(s, z, v, ctx.cfg))))
                worst = max(worst, float(np.linalg.norm(coframe_w(c, algebra, z, v, ctx.cfg) - eye_k[j])))
        return ok(worst, tol, count)

    return run


def theta_equivariance_run(s: SSpace, fd: bool = True):
    """L(a) theta_{z.a}((R_a)_* b) = theta_z(b)."""

    def run(ctx: RunContext) -> Report:
        tol = ctx.tolerance(fd)
        worst = 0.0
        count = max(5, ctx.samples // 10)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            basis = np.asarray(s.total.tangent_basis(z.coords), dtype=float)
            b = ctx.rng.standard_normal(basis.shape[0]) @ basis
            a = random_element(s.group, ctx.rng).value

            def moved(x: np.ndarray, a=a) -> np.ndarray:
                return act(s, PointOn(s.total, x), a).coords

            ra = differential(moved, z.coords, ctx.cfg)
            theta_z = coframe_theta(s, z, b, ctx.cfg)
            theta_za = coframe_theta(s, act(s, z, a), ra @ b, ctx.cfg)
            l_mat = extract_base_change(s, a, z, ctx.cfg)
            worst = max(worst, float(np.linalg.norm(l_mat @ theta_za - theta_z)))
        return ok(worst, tol, count)

    return run


def submersion_run(c: SSpaceConnection, g: Tensor02Field, g_total: Tensor02Field, fd: bool = True):
    """Horizontal lifts preserve length: the projection is a Riemannian submersion."""

    def run(ctx: RunContext) -> Report:
        s = c.sspace
        tol = ctx.tolerance(fd)
        worst = 0.0
        count = max(5, ctx.samples // 10)
        for _ in range(count):
            z = random_point(s.total, ctx.rng)
            p = s.psi.eval(z)
            v = random_tangent(p, ctx.rng)
            lift = horizontal_lift(c, v, z, ctx.cfg)
            up = g_total.eval(z, lift, lift)
            down = g.eval(p, v, v)
            worst = max(worst, abs(up - down) / max(1.0, abs(down)))
        return ok(worst, tol, count)

    return run


def global_frame_run(c: SSpaceConnection, algebra: Sequence[AlgebraElement], fd: bool = True):
    def run(ctx: RunContext) -> Report:
        return global_frame_check(c, algebra, max(3, ctx.samples // 20), ctx.rng, ctx.cfg)

    return run


def iterate_equivalence_run(m: SSpaceMorphism, t: Tensor02Field, count: int, fd: bool = False):
    """Iterated-pullback invariance at power count forces plain invariance.

    Computes both verdicts independently and demands they agree; when the
    iterate raises NotATensor the direct invariance must fail too.
    """

    def run(ctx: RunContext) -> Report:
        from ..errors import NotATensor
        from ..morphisms import is_invariant_tensor, iterate_pullback

        tol = ctx.tolerance(fd)
        direct = is_invariant_tensor(m, t, ctx.samples, ctx.rng, ctx.cfg, tol)
        z = random_point(m.source.total, ctx.rng)
        try:
            iterate_pullback(m, t, count, z, ctx.samples, ctx.rng, ctx.cfg, tol)
            iterate_ok = True
        except NotATensor:
            iterate_ok = False
        agree = iterate_ok or not direct.passed
        detail = "" if agree else f"iterate {count} fails but the tensor is invariant"
        return Report(
            passed=agree,
            max_deviation=direct.max_deviation if direct.passed else 0.0,
            samples=ctx.samples,
            detail=detail,
        )

    return run
