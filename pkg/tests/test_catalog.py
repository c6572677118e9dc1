import numpy as np
import pytest

from sspace.catalog import get_entry, registry
from sspace.catalog.base import SUITES, RunContext, stable_seed
from sspace.config import DEFAULT
from sspace.errors import UnknownInstance

EXPECTED_ORDER = (
    "lm-flat-2",
    "oframes-flat-2",
    "punctured-2",
    "tangent-flat-2",
    "tangent-sphere2",
    "unit-tangent-sphere2",
    "frame-conn-2",
    "liegroup-pair-so3",
    "liegroup-bases-so3",
    "liegroup-ortho-so3",
    "hopf",
    "hopf-frame-algebra",
    "minkowski-p51",
)


def test_registry_names_and_order(reg):
    assert tuple(reg) == EXPECTED_ORDER


def test_entries_are_well_formed(reg):
    for name, entry in reg.items():
        assert entry.name == name
        assert entry.summary
        assert entry.checks
        seen = set()
        for check in entry.checks:
            assert check.suite in SUITES, f"{name}/{check.name}: bad suite {check.suite}"
            assert check.anchor
            assert check.name not in seen
            seen.add(check.name)


def test_suite_filtering(reg):
    entry = reg["lm-flat-2"]
    assert entry.suite_checks("all") == entry.checks
    structure = entry.suite_checks("structure")
    assert structure
    assert all(c.suite == "structure" for c in structure)


def test_get_entry_rejects_unknown():
    assert get_entry("hopf").name == "hopf"
    with pytest.raises(UnknownInstance):
        get_entry("moebius")


@pytest.mark.parametrize("name", EXPECTED_ORDER)
def test_every_check_passes_at_low_samples(reg, name):
    entry = reg[name]
    failures = []
    for check in entry.checks:
        rng = np.random.default_rng(stable_seed(7, f"{name}:{check.name}"))
        ctx = RunContext(samples=20, tol=1e-7, fd_tol=1e-4, rng=rng, cfg=DEFAULT)
        report = check.run(ctx)
        if not report.passed:
            failures.append(f"{check.name}: dev {report.max_deviation:.3e} {report.detail}")
    assert not failures, f"{name}: {failures}"
