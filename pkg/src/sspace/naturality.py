"""Naturality notions: constant representations, fibration variants, atlases.

A tensor is natural for a frame space when its matrix representation is a
constant map; over a trivial fibration the requirement weakens to
dependence on the fiber parameter alone.  Atlases of frame spaces give
the conjunctive and existential variants.  The constant-signature
constructor builds, for a symmetric tensor of constant rank and index, a
frame space in which the tensor's representation is the standard
diagonal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT, DiffConfig
from .core import SSpace, matrix_rep, verify_rigidity
from .errors import (
    BadSignature,
    MissingFiberSplit,
    RigidityLost,
    SamplerExhausted,
    SignatureMismatch,
    Singular,
)
from .geometry import Manifold, PointOn, SmoothMap, Tangent, Tensor02Field, random_point
from .groups import block_group
from .morphisms import SSpaceMorphism, verify_morphism
from .numerics import differential, solve_least_squares
from .report import NaturalityReport, Report, merge_reports

__all__ = [
    "Atlas",
    "validate_atlas",
    "is_lambda_natural",
    "depends_only_on_split",
    "is_fibration_natural",
    "constant_signature_sspace",
    "frame_twist",
    "is_atlas_natural",
    "is_weak_natural",
    "is_atlas_fibration_natural",
]


def is_lambda_natural(
    s: SSpace,
    t: Tensor02Field,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
) -> NaturalityReport:
    """Whether the matrix representation is a constant map, by sampling."""
    tol = cfg.tol if tol is None else tol
    ref = matrix_rep(s, t, random_point(s.total, rng), cfg)
    scale = max(1.0, float(np.linalg.norm(ref)))
    worst = 0.0
    for _ in range(samples):
        rep = matrix_rep(s, t, random_point(s.total, rng), cfg)
        worst = max(worst, float(np.linalg.norm(rep - ref)) / scale)
    return NaturalityReport(
        passed=worst <= tol, max_deviation=worst, samples=samples, witness_matrix=ref
    )


def depends_only_on_split(
    s: SSpace,
    t: Tensor02Field,
    split: tuple[int, int],
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
) -> NaturalityReport:
    """Whether the representation depends only on the coordinate slice split.

    Fixes the slice at several sampled values and resamples all other
    coordinates; the representation must be constant within each group.
    An empty slice degenerates to the plain constancy test.
    """
    tol = cfg.tol if tol is None else tol
    lo, hi = split
    if hi <= lo:
        return is_lambda_natural(s, t, samples, rng, cfg, tol)

    n_groups = max(3, min(10, samples // 6))
    per_group = max(3, samples // n_groups)
    worst = 0.0
    witness = None
    for _ in range(n_groups):
        anchor = random_point(s.total, rng)
        ref = None
        for _ in range(per_group):
            z = None
            for _ in range(50):
                donor = random_point(s.total, rng)
                coords = donor.coords.copy()
                coords[lo:hi] = anchor.coords[lo:hi]
                if s.total.contains(coords, 1e-8):
                    z = PointOn(s.total, coords)
                    break
            if z is None:
                raise SamplerExhausted(
                    f"could not splice coordinates {lo}:{hi} into valid points of {s.total.name}"
                )
            rep = matrix_rep(s, t, z, cfg)
            if ref is None:
                ref = rep
                if witness is None:
                    witness = rep
            else:
                worst = max(
                    worst,
                    float(np.linalg.norm(rep - ref)) / max(1.0, float(np.linalg.norm(ref))),
                )
    return NaturalityReport(
        passed=worst <= tol,
        max_deviation=worst,
        samples=n_groups * per_group,
        witness_matrix=witness,
    )


def is_fibration_natural(
    s: SSpace,
    t: Tensor02Field,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
) -> NaturalityReport:
    """Representation depends only on the fiber parameter of a trivial frame space."""
    if s.fiber_split is None:
        raise MissingFiberSplit(f"{s.name} declares no fiber parameter slice")
    return depends_only_on_split(s, t, s.fiber_split, samples, rng, cfg, tol)


def _signature_of(gram: np.ndarray, thresh: float) -> tuple[int, int, int]:
    vals = np.linalg.eigvalsh(gram)
    scale = max(1.0, float(np.max(np.abs(vals))) if vals.size else 1.0)
    pos = int(np.count_nonzero(vals > thresh * scale))
    neg = int(np.count_nonzero(vals < -thresh * scale))
    return pos, neg, vals.size - pos - neg


def _diagonalizing_rows(
    m: Manifold, t: Tensor02Field, p: PointOn, thresh: float
) -> np.ndarray:
    """Frame rows diagonalizing t at p to diag(1..1, -1..-1, 0..0).

    Ordering: positive eigenvalues by descending magnitude, then negative
    by descending magnitude, then kernel; eigenvectors get a sign fix
    (first sizable coefficient positive) to make the choice deterministic.
    """
    basis = np.asarray(m.tangent_basis(p.coords), dtype=float)
    n = basis.shape[0]
    gram = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            val = t.eval(p, Tangent(p, basis[i]), Tangent(p, basis[j]))
            gram[i, j] = val
            gram[j, i] = val
    vals, vecs = np.linalg.eigh(gram)
    scale = max(1.0, float(np.max(np.abs(vals))))
    order = []
    pos = [i for i in range(n) if vals[i] > thresh * scale]
    neg = [i for i in range(n) if vals[i] < -thresh * scale]
    ker = [i for i in range(n) if i not in pos and i not in neg]
    order.extend(sorted(pos, key=lambda i: -abs(vals[i])))
    order.extend(sorted(neg, key=lambda i: -abs(vals[i])))
    order.extend(ker)
    rows = np.empty((n, m.ambient_dim))
    for out_idx, i in enumerate(order):
        coeff = vecs[:, i].copy()
        for c in coeff:
            if abs(c) > 1e-9:
                if c < 0:
                    coeff = -coeff
                break
        if i in pos or i in neg:
            coeff = coeff / np.sqrt(abs(vals[i]))
        rows[out_idx] = basis.T @ coeff
    return rows


def constant_signature_sspace(
    m: Manifold,
    t: Tensor02Field,
    positives: int,
    rank: int,
    rng: np.random.Generator,
    samples: int = 25,
    cfg: DiffConfig = DEFAULT,
    name: str = "",
) -> SSpace:
    """Frame space of diagonalizing frames for a constant-signature symmetric tensor.

    The total space is the orbit of the canonical diagonalizing section
    under the block group O(positives) x O(rank-positives) x GL(n-rank);
    the representation of t is then constantly the standard diagonal
    matrix with the given counts of +1, -1, 0.
    """
    n = m.dim
    if not (0 <= positives <= rank <= n):
        raise BadSignature(f"invalid signature request ({positives}, {rank}, {n})")
    expected = (positives, rank - positives, n - rank)
    thresh = 1e-6
    probe_pts = [random_point(m, rng) for _ in range(samples)]
    for p in probe_pts:
        basis = np.asarray(m.tangent_basis(p.coords), dtype=float)
        gram = np.array(
            [
                [t.eval(p, Tangent(p, bi), Tangent(p, bj)) for bj in basis]
                for bi in basis
            ]
        )
        sig = _signature_of(gram, thresh)
        if sig != expected:
            raise SignatureMismatch(
                f"sampled signature {sig} differs from requested {expected} at {p.coords}"
            )

    group = block_group(positives, rank, n)
    amb = m.ambient_dim

    def canonical(coords: np.ndarray) -> np.ndarray:
        return _diagonalizing_rows(m, t, PointOn(m, np.asarray(coords, dtype=float)), thresh)

    def split_coords(coords: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        coords = np.asarray(coords, dtype=float)
        return coords[:amb], coords[amb:].reshape(n, amb)

    def contains(coords: np.ndarray, tol: float) -> bool:
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (amb + n * amb,):
            return False
        base_c, rows = split_coords(coords)
        if not m.contains(base_c, tol):
            return False
        canon = canonical(base_c)
        res = solve_least_squares(canon.T, rows.T, cfg)
        if res.residual > 1e-6 * max(1.0, float(np.linalg.norm(rows))):
            return False
        return group.membership(res.solution, 1e-6)

    def tangent_basis(coords: np.ndarray) -> np.ndarray:
        base_c, rows = split_coords(coords)
        canon = canonical(base_c)
        res = solve_least_squares(canon.T, rows.T, cfg)
        a_mat = res.solution

        def frame_part(x: np.ndarray) -> np.ndarray:
            return (canonical(x).T @ a_mat).T.ravel()

        out = []
        base_rows = np.asarray(m.tangent_basis(base_c), dtype=float)
        if base_rows.size:
            jac = differential(frame_part, base_c, cfg)
            for row in base_rows:
                out.append(np.concatenate([row, jac @ row]))
        fmat = rows.T
        for x_alg in group.algebra_basis:
            out.append(np.concatenate([np.zeros(amb), (fmat @ x_alg).T.ravel()]))
        return np.array(out) if out else np.zeros((0, amb + n * amb))

    def sampler(r: np.random.Generator) -> np.ndarray:
        p = m.sampler(r)
        a = group.sampler(r)
        rows = (canonical(p).T @ a).T
        return np.concatenate([np.asarray(p, dtype=float), rows.ravel()])

    dim_total = m.dim + group.dim
    total = Manifold(
        name=name or f"diag-frames({t.name})",
        dim=dim_total,
        ambient_dim=amb + n * amb,
        contains=contains,
        tangent_basis=tangent_basis,
        sampler=sampler,
    )

    def psi_fn(coords: np.ndarray) -> np.ndarray:
        return np.asarray(coords, dtype=float)[:amb]

    def psi_jac(coords: np.ndarray) -> np.ndarray:
        j = np.zeros((amb, amb + n * amb))
        j[:, :amb] = np.eye(amb)
        return j

    def action(z: PointOn, a) -> PointOn:
        base_c, rows = split_coords(z.coords)
        new_rows = (rows.T @ np.asarray(a, dtype=float)).T
        return PointOn(total, np.concatenate([base_c, new_rows.ravel()]))

    def frames(z: PointOn) -> np.ndarray:
        return split_coords(z.coords)[1]

    def fiber_section(p: PointOn) -> PointOn:
        rows = canonical(p.coords)
        return PointOn(total, np.concatenate([p.coords, rows.ravel()]))

    def witness_finder(z: PointOn, zbar: PointOn):
        rows = split_coords(z.coords)[1]
        rows_bar = split_coords(zbar.coords)[1]
        return solve_least_squares(rows.T, rows_bar.T, cfg).solution

    return SSpace(
        name=name or f"diag({t.name})",
        total=total,
        base=m,
        group=group,
        psi=SmoothMap(total, m, psi_fn, jacobian=psi_jac, name="base-point"),
        action=action,
        frames=frames,
        fiber_section=fiber_section,
        fiber_split=None,
        witness_finder=witness_finder,
        analytic=True,
    )


def frame_twist(
    s: SSpace,
    twist,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    name: str = "",
    check: bool = True,
) -> SSpace:
    """New frame space with frames right-multiplied by the matrix field twist.

    twist maps PointOn N to an invertible (n, n) matrix.  The result must
    still satisfy the rigidity law; a twist varying along fibers in a
    group-incompatible way raises RigidityLost.
    """
    probes = [random_point(s.total, rng) for _ in range(max(5, samples // 10))]
    for z in probes:
        a = np.asarray(twist(z), dtype=float)
        if abs(np.linalg.det(a)) < 1e-8:
            raise Singular(f"twist matrix is singular at {z.coords}")

    def frames(z: PointOn) -> np.ndarray:
        rows = np.asarray(s.frames(z), dtype=float)
        return (rows.T @ np.asarray(twist(z), dtype=float)).T

    twisted = SSpace(
        name=name or f"{s.name}-twisted",
        total=s.total,
        base=s.base,
        group=s.group,
        psi=s.psi,
        action=s.action,
        frames=frames,
        fiber_section=s.fiber_section,
        fiber_split=s.fiber_split,
        witness_finder=s.witness_finder,
        analytic=s.analytic,
    )
    if check:
        report = verify_rigidity(twisted, max(10, samples // 4), rng, cfg)
        if not report.passed:
            raise RigidityLost(
                f"twisted frames violate the rigidity law (deviation {report.max_deviation:.3e})"
            )
    return twisted


@dataclass(frozen=True, eq=False)
class Atlas:
    """Finite family of frame spaces over one base, pairwise linked by morphisms."""

    members: tuple[SSpace, ...]
    links: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))

    def link(self, i: int, j: int) -> SSpaceMorphism:
        return self.links[(i, j)]

    def __repr__(self) -> str:
        return f"Atlas({self.name or len(self.members)})"


def validate_atlas(
    atlas: Atlas,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
) -> Report:
    """Every link is a morphism and opposite links invert each other on samples."""
    tol = cfg.tol if tol is None else tol
    reports = []
    count = len(atlas.members)
    for i in range(count):
        for j in range(count):
            if i == j:
                continue
            if (i, j) not in atlas.links:
                return Report(False, float("inf"), 0, f"missing link {i}->{j}")
            reports.append(verify_morphism(atlas.link(i, j), samples, rng, cfg, tol))
    worst = 0.0
    for i in range(count):
        for j in range(i + 1, count):
            fwd, back = atlas.link(i, j), atlas.link(j, i)
            for _ in range(max(3, samples // 10)):
                z = random_point(atlas.members[i].total, rng)
                back_coords = back.f.eval(fwd.f.eval(z)).coords
                worst = max(worst, float(np.linalg.norm(back_coords - z.coords)))
    reports.append(Report(worst <= tol, worst, samples, ""))
    return merge_reports(reports)


def is_atlas_natural(
    atlas: Atlas,
    t: Tensor02Field,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
) -> NaturalityReport:
    """Natural in every member."""
    worst = 0.0
    witness = None
    ok = True
    for member in atlas.members:
        rep = is_lambda_natural(member, t, samples, rng, cfg, tol)
        worst = max(worst, rep.max_deviation)
        ok = ok and rep.passed
        if witness is None:
            witness = rep.witness_matrix
    return NaturalityReport(passed=ok, max_deviation=worst, samples=samples, witness_matrix=witness)


def is_weak_natural(
    atlas: Atlas,
    t: Tensor02Field,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
) -> NaturalityReport:
    """Natural in at least one member; the witness records which one."""
    best = None
    for idx, member in enumerate(atlas.members):
        rep = is_lambda_natural(member, t, samples, rng, cfg, tol)
        if rep.passed:
            return NaturalityReport(
                passed=True,
                max_deviation=rep.max_deviation,
                samples=samples,
                witness_matrix=rep.witness_matrix,
                detail=f"member {idx} ({member.name})",
            )
        if best is None or rep.max_deviation < best.max_deviation:
            best = rep
    return NaturalityReport(
        passed=False,
        max_deviation=best.max_deviation if best else float("inf"),
        samples=samples,
        witness_matrix=None,
        detail="no member admits a constant representation",
    )


def is_atlas_fibration_natural(
    atlas: Atlas,
    t: Tensor02Field,
    samples: int,
    rng: np.random.Generator,
    cfg: DiffConfig = DEFAULT,
    tol: float | None = None,
) -> NaturalityReport:
    """Fibration-natural in every member of a trivial atlas."""
    for member in atlas.members:
        if member.fiber_split is None:
            raise MissingFiberSplit(f"{member.name} declares no fiber parameter slice")
    worst = 0.0
    witness = None
    ok = True
    for member in atlas.members:
        rep = is_fibration_natural(member, t, samples, rng, cfg, tol)
        worst = max(worst, rep.max_deviation)
        ok = ok and rep.passed
        if witness is None:
            witness = rep.witness_matrix
    return NaturalityReport(passed=ok, max_deviation=worst, samples=samples, witness_matrix=witness)
