import json

import pytest

from sspace.cli import build_parser, main, run_verify

INSTANCE_COUNT = 13


def test_list_prints_every_instance(capsys):
    assert main(["list"]) == 0
    lines = [ln for ln in capsys.readouterr().out.splitlines() if ln.strip()]
    assert len(lines) == INSTANCE_COUNT
    assert lines[0].startswith("lm-flat-2")
    assert lines[-1].startswith("minkowski-p51")


def test_verify_single_instance_schema(capsys):
    rc = main(["verify", "--instance", "minkowski-p51", "--samples", "20"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == {"version", "config", "checks", "pass"}
    assert payload["pass"] is True
    cfg = payload["config"]
    assert cfg["instance"] == "minkowski-p51"
    assert cfg["suite"] == "all"
    assert cfg["samples"] == 20
    for check in payload["checks"]:
        assert check["instance"] == "minkowski-p51"
        assert set(check) >= {"name", "anchor", "pass", "max_dev", "n", "elapsed"}
        assert check["pass"] is True


def test_verify_suite_filter(capsys):
    rc = main(["verify", "--instance", "lm-flat-2", "--suite", "morphisms", "--samples", "20"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["checks"]
    names = {c["name"] for c in payload["checks"]}
    assert "automorphism-morphism" in names
    assert "rigidity" not in names


def test_unknown_instance_and_suite_exit_2(capsys):
    assert main(["verify", "--instance", "moebius"]) == 2
    assert "moebius" in capsys.readouterr().err
    assert main(["verify", "--suite", "nonsense"]) == 2


def test_small_sample_count_rejected():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["verify", "--samples", "5"])
    assert exc.value.code == 2


def test_run_verify_is_deterministic():
    kwargs = dict(instance="liegroup-ortho-so3", suite="all", samples=15, tol=1e-7, fd_tol=1e-4, seed=3)
    first = run_verify(**kwargs)
    second = run_verify(**kwargs)

    def strip(payload):
        return [{k: v for k, v in c.items() if k != "elapsed"} for c in payload["checks"]]

    assert strip(first) == strip(second)
    assert first["pass"] and second["pass"]


def test_forced_failure_returns_1(capsys):
    rc = main(["verify", "--instance", "liegroup-ortho-so3", "--samples", "15", "--tol", "1e-30"])
    assert rc == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["pass"] is False
    assert any(not c["pass"] for c in payload["checks"])


def test_out_writes_report_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    rc = main(["verify", "--instance", "minkowski-p51", "--samples", "20", "--out", str(out)])
    assert rc == 0
    payload = json.loads(out.read_text())
    assert payload["pass"] is True
    assert str(out) in capsys.readouterr().out
