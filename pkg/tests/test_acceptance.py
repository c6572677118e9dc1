"""Acceptance gate: one test per release criterion.

Run with -v to get one pass/fail line per criterion.  Tolerances are pinned
here on purpose; loosening them is a release decision, not a test fix.
"""

import dataclasses
import json

import numpy as np
import pytest

from sspace.catalog.base import RunContext, cocycle_run, stable_seed
from sspace.cli import main
from sspace.config import DEFAULT
from sspace.connections import (
    global_frame_check,
    horizontal_lift,
    lifted_metric,
    verify_connection,
)
from sspace.core import (
    check_invariance,
    dimension_identity,
    frame_matrix,
    matrix_rep,
    stabilizer_dim,
    tensor_from_matrix,
)
from sspace.geometry import (
    PointOn,
    Tensor02Field,
    ambient_dot_metric,
    constant_matrix_tensor,
    polynomial_tensor,
    pushforward,
    random_point,
    random_tangent,
    scale_tensor,
)
from sspace.groups import AlgebraElement, random_element
from sspace.morphisms import SSpaceMorphism, linking_map, verify_morphism
from sspace.naturality import (
    depends_only_on_split,
    is_atlas_natural,
    is_lambda_natural,
    is_weak_natural,
)
from sspace.numerics import solve_least_squares

SAMPLES = 200
SEED = 42
TOL = 1e-7
FD_TOL = 1e-4


def crit_rng(tag):
    return np.random.default_rng(stable_seed(SEED, f"acceptance:{tag}"))


def report_line(number, slug, failures):
    status = "PASS" if not failures else "FAIL"
    print(f"[{status}] criterion {number:02d} {slug}")
    assert not failures, f"criterion {number}: {failures}"


def test_criterion_01_roundtrips(reg):
    rng = crit_rng(1)
    failures = []
    for name, seeds in (
        ("lm-flat-2", (101, 102, 103)),
        ("tangent-flat-2", (201, 202, 203)),
        ("liegroup-pair-so3", (301, 302, 303)),
    ):
        s = reg[name].objects["sspace"]
        for seed in seeds:
            t = polynomial_tensor(s.base, seed=seed)
            rep_map = lambda z, t=t: matrix_rep(s, t, z)
            t_back = tensor_from_matrix(s, rep_map, samples=40, rng=rng)
            worst_t = worst_m = 0.0
            for _ in range(100):
                p = random_point(s.base, rng)
                u, v = random_tangent(p, rng), random_tangent(p, rng)
                a, b = t.eval(p, u, v), t_back.eval(p, u, v)
                worst_t = max(worst_t, abs(a - b) / max(1.0, abs(a)))
                z = random_point(s.total, rng)
                dev = np.linalg.norm(matrix_rep(s, t_back, z) - rep_map(z))
                worst_m = max(worst_m, dev / max(1.0, np.linalg.norm(rep_map(z))))
            if worst_t > TOL or worst_m > TOL:
                failures.append(f"{name} seed {seed}: tensor {worst_t:.2e} matrix {worst_m:.2e}")
    report_line(1, "tensor/matrix roundtrips", failures)


def test_criterion_02_invariance_law(reg):
    rng = crit_rng(2)
    failures = []
    for name, entry in reg.items():
        if name == "minkowski-p51":
            pairs = [
                (entry.objects["build_plane"](rng), entry.objects["lorentz"]),
                (entry.objects["build_rank_one"](rng), entry.objects["rank_one"]),
            ]
        else:
            s = entry.objects["sspace"]
            pairs = [
                (s, t)
                for t in entry.objects.values()
                if isinstance(t, Tensor02Field) and t.manifold is s.base
            ]
        if not pairs:
            failures.append(f"{name}: no tensors found")
        for s, t in pairs:
            rep = check_invariance(s, lambda z, s=s, t=t: matrix_rep(s, t, z), 60, rng, tol=TOL)
            if not rep.passed:
                failures.append(f"{name}/{t.name}: dev {rep.max_deviation:.2e}")

    lm = reg["lm-flat-2"].objects["sspace"]
    g = reg["lm-flat-2"].objects["metric"]
    const = check_invariance(lm, lambda z: np.eye(2), 60, rng, tol=TOL)
    if const.passed or const.max_deviation <= 10 * TOL:
        failures.append("constant identity map not rejected")

    def twist(z):
        return (1.0 + 0.1 * np.sin(z.coords[2])) * np.asarray(lm.frames(z), dtype=float)

    perturbed = dataclasses.replace(lm, frames=twist, name="perturbed")
    planted = check_invariance(lm, lambda z: matrix_rep(perturbed, g, z), 60, rng, tol=TOL)
    if planted.passed or planted.max_deviation <= 10 * TOL:
        failures.append("perturbed-frame representation not rejected")
    report_line(2, "representation invariance law", failures)


def _entry_morphisms(entry):
    found = {}
    for key, value in entry.objects.items():
        if isinstance(value, SSpaceMorphism):
            found[key] = value
        elif key == "morphisms":
            found.update(value)
    return found


def test_criterion_03_morphism_pullback_sweep(reg):
    rng = crit_rng(3)
    failures = []
    for name, entry in reg.items():
        for mname, m in _entry_morphisms(entry).items():
            rep = verify_morphism(m, 100, rng, tol=TOL)
            if not rep.passed:
                failures.append(f"{name}/{mname}: morphism law {rep.max_deviation:.2e}")
            if not m.over_identity:
                continue
            ctx = RunContext(samples=100, tol=TOL, fd_tol=FD_TOL, rng=rng, cfg=DEFAULT)
            coc = cocycle_run(m)(ctx)
            if not coc.passed:
                failures.append(f"{name}/{mname}: cocycle {coc.max_deviation:.2e}")
            tensors = [
                t
                for t in entry.objects.values()
                if isinstance(t, Tensor02Field) and t.manifold is m.target.base
            ][:3]
            for extra_seed in range(401, 401 + 3 - len(tensors)):
                tensors.append(polynomial_tensor(m.target.base, seed=extra_seed))
            worst = 0.0
            for t in tensors:
                for _ in range(100):
                    z = random_point(m.source.total, rng)
                    direct = matrix_rep(m.target, t, m.f.eval(z))
                    c = linking_map(m, z)
                    via = c.T @ matrix_rep(m.source, t, z) @ c
                    dev = np.linalg.norm(direct - via) / max(1.0, np.linalg.norm(direct))
                    worst = max(worst, dev)
            if worst > TOL:
                failures.append(f"{name}/{mname}: pullback {worst:.2e}")
    report_line(3, "pullback and cocycle laws on all morphisms", failures)


def test_criterion_04_stabilizer_dimensions(reg):
    rng = crit_rng(4)
    failures = []
    for name, entry in reg.items():
        s = (
            entry.objects["build_plane"](rng)
            if name == "minkowski-p51"
            else entry.objects["sspace"]
        )
        dims = set()
        for _ in range(10):
            z = random_point(s.total, rng)
            dims.add(stabilizer_dim(s, z))
            moved = s.action(z, random_element(s.group, rng).value)
            dims.add(stabilizer_dim(s, moved))
        if len(dims) != 1:
            failures.append(f"{name}: stabilizer dims {sorted(dims)}")

    for name, expected in (("lm-flat-2", 0), ("punctured-2", 2)):
        s = reg[name].objects["sspace"]
        z = random_point(s.total, rng)
        got = stabilizer_dim(s, z)
        if got != expected:
            failures.append(f"{name}: stabilizer dim {got} != {expected}")
        rep = dimension_identity(s, 5, rng)
        if not rep.passed:
            failures.append(f"{name}: dimension identity {rep.detail}")
    report_line(4, "stabilizer dimension constancy and identity", failures)


def test_criterion_05_bundle_metric_values(reg):
    failures = []
    cg_lower = np.diag([1.0, 0.5])
    for name, xi_slice, atol in (
        ("tangent-flat-2", slice(6, 8), TOL),
        ("tangent-sphere2", slice(9, 11), FD_TOL),
    ):
        rng = crit_rng(f"5:{name}")
        objs = reg[name].objects
        s = objs["sspace"]
        worst_s = worst_cg = 0.0
        for _ in range(40):
            z = random_point(s.total, rng)
            worst_s = max(worst_s, np.linalg.norm(matrix_rep(s, objs["sasaki"], z) - np.eye(4)))
            coords = z.coords.copy()
            coords[xi_slice] = (1.0, 0.0)
            pinned = PointOn(s.total, coords)
            rep = matrix_rep(s, objs["cheeger_gromoll"], pinned)
            worst_cg = max(worst_cg, np.linalg.norm(rep[2:, 2:] - cg_lower))
            worst_cg = max(worst_cg, np.linalg.norm(rep[:2, :2] - np.eye(2)))
        if worst_s > atol:
            failures.append(f"{name}: round form dev {worst_s:.2e}")
        if worst_cg > atol:
            failures.append(f"{name}: weighted form dev {worst_cg:.2e}")
    report_line(5, "closed-form bundle metric representations", failures)


def test_criterion_06_hopf_naturality_verdicts(reg):
    rng = crit_rng(6)
    failures = []
    objs = reg["hopf"].objects
    s = objs["sspace"]
    good = is_lambda_natural(s, objs["metric"], 100, rng, tol=TOL)
    if not good.passed:
        failures.append(f"constant fiber length not natural: {good.max_deviation:.2e}")
    bad = is_lambda_natural(s, objs["height_metric"], 100, rng, tol=TOL)
    if bad.passed:
        failures.append("height-dependent fiber length accepted")
    elif bad.max_deviation <= 10 * TOL:
        failures.append(f"rejection not decisive: {bad.max_deviation:.2e}")
    report_line(6, "fibration metric naturality split", failures)


def test_criterion_07_lie_group_examples(reg):
    rng = crit_rng(7)
    failures = []

    pair = reg["liegroup-pair-so3"].objects
    s = pair["sspace"]
    for k in range(3):
        x = rng.normal(size=(3, 3))
        t = tensor_from_matrix(s, lambda z, x=x: x, samples=20, rng=rng)
        worst = 0.0
        for _ in range(15):
            z = random_point(s.total, rng)
            worst = max(worst, np.linalg.norm(matrix_rep(s, t, z) - x))
        if worst > TOL:
            failures.append(f"constant map {k} lost: {worst:.2e}")
    split = depends_only_on_split(s, pair["metric"], s.fiber_split, 60, rng, tol=TOL)
    if not split.passed:
        failures.append(f"cross-parameter deviation {split.max_deviation:.2e}")

    bases = reg["liegroup-bases-so3"].objects
    sb = bases["sspace"]
    null = constant_matrix_tensor(sb.base, np.zeros((9, 9)), name="null")
    if not is_lambda_natural(sb, null, 60, rng, tol=TOL).passed:
        failures.append("null tensor rejected on the bases slot")
    for k in range(3):
        a = rng.normal(size=(9, 9))
        t = constant_matrix_tensor(sb.base, a + a.T)
        rep = is_lambda_natural(sb, t, 60, rng, tol=TOL)
        if rep.passed:
            failures.append(f"nonzero constant tensor {k} accepted on the bases slot")

    ortho = reg["liegroup-ortho-so3"].objects
    so = ortho["sspace"]
    conf = is_lambda_natural(so, ortho["conformal"], 60, rng, tol=TOL)
    if not conf.passed:
        failures.append(f"conformal form rejected: {conf.max_deviation:.2e}")
    elif np.linalg.norm(conf.witness_matrix - 2.0 * np.eye(3)) > 1e-5:
        failures.append("conformal witness is not 2I")
    if is_lambda_natural(so, ortho["metric"], 60, rng, tol=TOL).passed:
        failures.append("anisotropic metric accepted over orthonormal bases")
    report_line(7, "lie-group worked examples", failures)


def test_criterion_08_constant_signature_normal_forms(reg):
    rng = crit_rng(8)
    failures = []
    objs = reg["minkowski-p51"].objects
    for builder, tensor, expected, label in (
        ("build_plane", "lorentz", np.diag([1.0, -1.0]), "lorentz"),
        ("build_rank_one", "rank_one", np.diag([1.0, 0.0]), "rank-one"),
    ):
        space = objs[builder](rng)
        t = objs[tensor]
        worst = 0.0
        for _ in range(50):
            z = random_point(space.total, rng)
            worst = max(worst, np.linalg.norm(matrix_rep(space, t, z) - expected))
        if worst > TOL:
            failures.append(f"{label}: dev {worst:.2e}")
    report_line(8, "diagonalizing-frame normal forms", failures)


def test_criterion_09_connections(reg):
    rng = crit_rng(9)
    failures = []
    connections = [
        (name, reg[name].objects["connection"])
        for name in ("lm-flat-2", "tangent-flat-2", "tangent-sphere2", "frame-conn-2", "hopf")
    ]
    connections.append(("hopf-bundle", reg["hopf"].objects["bundle_connection"]))
    for label, conn in connections:
        rep = verify_connection(conn, 20, rng, tol=FD_TOL)
        if not rep.passed:
            failures.append(f"{label}: connection laws {rep.max_deviation:.2e} {rep.detail}")
        s = conn.sspace
        worst = 0.0
        for _ in range(10):
            z = random_point(s.total, rng)
            v = random_tangent(s.psi.eval(z), rng)
            lift = horizontal_lift(conn, v, z)
            dev = np.linalg.norm(pushforward(s.psi, lift).vec - v.vec)
            worst = max(worst, dev / max(1.0, np.linalg.norm(v.vec)))
        if worst > FD_TOL:
            failures.append(f"{label}: lift inversion {worst:.2e}")

    bundle = reg["hopf"].objects["bundle_connection"]
    sb = bundle.sspace
    algebra_b = [AlgebraElement(sb.group, np.array([[0.0, -1.0], [1.0, 0.0]]))]
    round_g = ambient_dot_metric(sb.base, name="round")
    gt = lifted_metric(bundle, round_g, algebra_b)
    worst = 0.0
    for _ in range(20):
        z = random_point(sb.total, rng)
        v = random_tangent(sb.psi.eval(z), rng)
        lift = horizontal_lift(bundle, v, z)
        worst = max(worst, abs(gt.eval(z, lift, lift) - round_g.eval(v.base, v, v)))
    if worst > FD_TOL:
        failures.append(f"submersion norms {worst:.2e}")

    hopf_conn = reg["hopf"].objects["connection"]
    hopf_algebra = [AlgebraElement(hopf_conn.sspace.group, v) for v in hopf_conn.sspace.group.algebra_basis]
    fc = reg["frame-conn-2"].objects["connection"]
    fc_algebra = [AlgebraElement(fc.sspace.group, v) for v in fc.sspace.group.algebra_basis]
    for label, conn, algebra in (("hopf", hopf_conn, hopf_algebra), ("frame-conn-2", fc, fc_algebra)):
        rep = global_frame_check(conn, algebra, 4, rng)
        if not rep.passed:
            failures.append(f"{label}: global frame {rep.detail}")
    report_line(9, "connection laws, lifts, submersion, global frames", failures)


def test_criterion_10_atlas_naturality(reg):
    rng = crit_rng(10)
    failures = []

    punct = reg["punctured-2"].objects
    atlas, diag = punct["atlas"], punct["diag"]
    base = diag.manifold
    null = constant_matrix_tensor(base, np.zeros((2, 2)), name="null")
    inv_scaled = scale_tensor(diag, lambda p: 1.0 / (1.0 + 0.5 * p[0] ** 2) ** 2, name="inverse-bump")
    for t in (diag, punct["planted"], inv_scaled):
        rep = is_atlas_natural(atlas, t, 40, rng, tol=TOL)
        if rep.passed or rep.max_deviation <= 10 * TOL:
            failures.append(f"{t.name}: accepted by both members")
    if not is_atlas_natural(atlas, null, 40, rng, tol=TOL).passed:
        failures.append("null tensor rejected by the atlas")
    for t, member in ((diag, "member 0"), (inv_scaled, "member 1")):
        weak = is_weak_natural(atlas, t, 40, rng, tol=TOL)
        if not weak.passed or not weak.detail.startswith(member):
            failures.append(f"{t.name}: weak verdict {weak.detail!r}")

    of = reg["oframes-flat-2"].objects
    of_atlas = of["atlas"]
    member0 = of_atlas.members[0]
    for key in ("triple", "anisotropic", "poly"):
        t = of[key]
        atlas_verdict = is_atlas_natural(of_atlas, t, 40, rng, tol=TOL).passed
        member_verdict = is_lambda_natural(member0, t, 40, rng, tol=TOL).passed
        if atlas_verdict != member_verdict:
            failures.append(f"{key}: atlas {atlas_verdict} vs member {member_verdict}")
    report_line(10, "atlas counterexample and constant-twist equivalence", failures)


def test_criterion_11_connection_change_blocks(reg):
    rng = crit_rng(11)
    failures = []
    s_plain, s_retwist, _mu = reg["hopf"].objects["retwist"]
    worst_a2 = worst_a3 = 0.0
    for _ in range(50):
        z = random_point(s_plain.total, rng)
        d = solve_least_squares(frame_matrix(s_plain, z), frame_matrix(s_retwist, z)).solution
        worst_a2 = max(worst_a2, np.linalg.norm(d[:2, 2]))
        worst_a3 = max(worst_a3, abs(d[2, 2] - 1.0))
    if worst_a2 > FD_TOL:
        failures.append(f"horizontal block leaks into the fiber: {worst_a2:.2e}")
    if worst_a3 > FD_TOL:
        failures.append(f"fiber block is not the identity: {worst_a3:.2e}")
    report_line(11, "frame-change blocks between connections", failures)


def test_criterion_12_cli_determinism(tmp_path, capsys):
    outputs = []
    for k in (1, 2):
        out = tmp_path / f"report-{k}.json"
        rc = main(
            ["verify", "--instance", "all", "--suite", "all", "--seed", str(SEED), "--out", str(out)]
        )
        assert rc == 0, f"run {k} exited {rc}"
        payload = json.loads(out.read_text())
        for check in payload["checks"]:
            check.pop("elapsed", None)
        outputs.append(payload)
    capsys.readouterr()
    failures = [] if outputs[0] == outputs[1] else ["repeated runs differ"]
    if not outputs[0]["pass"]:
        failures.append("full catalog verification failed")
    report_line(12, "full-catalog determinism at the default seed", failures)
