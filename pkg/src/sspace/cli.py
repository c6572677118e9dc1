"""Command line driver: run the catalog's randomized checks and emit JSON.

Determinism: every check draws from its own generator seeded by a stable
hash of (seed, instance, check name), so verdicts and deviations repeat
across runs and are independent of check ordering.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__
from .catalog import RunContext, registry, stable_seed
from .catalog.base import SUITES as _CHECK_SUITES
from .config import DEFAULT
from .errors import UnknownInstance, UnknownSuite

SUITES = _CHECK_SUITES + ("all",)


def _samples_arg(text: str) -> int:
    try:
        val = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if val < 10:
        raise argparse.ArgumentTypeError("samples must be at least 10")
    return val


def _positive_arg(text: str) -> float:
    try:
        val = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not val > 0.0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return val


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sspace",
        description="Verify frame-space catalog instances by randomized sampling.",
    )
    sub = parser.add_subparsers(dest="command")

    verify = sub.add_parser("verify", help="run the checks of one or all instances")
    verify.add_argument("--instance", default="all", help="instance name or 'all'")
    verify.add_argument("--suite", default="all",
                        help="one of " + ", ".join(SUITES))
    verify.add_argument("--samples", type=_samples_arg, default=200,
                        help="sample count per check (>= 10, default 200)")
    verify.add_argument("--tol", type=_positive_arg, default=1e-7,
                        help="tolerance for analytic identities (default 1e-7)")
    verify.add_argument("--fd-tol", type=_positive_arg, default=1e-4,
                        help="tolerance for finite-difference paths (default 1e-4)")
    verify.add_argument("--seed", type=int, default=42, help="master seed (default 42)")
    verify.add_argument("--out", default=None, help="write the JSON report here instead of stdout")

    sub.add_parser("list", help="list instances with one-line descriptions")
    return parser


def run_verify(instance: str, suite: str, samples: int, tol: float,
               fd_tol: float, seed: int) -> dict:
    """Execute the selected checks; per-check failures are recorded, never raised."""
    if suite not in SUITES:
        raise UnknownSuite(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    reg = registry()
    if instance == "all":
        names = list(reg)
    elif instance in reg:
        names = [instance]
    else:
        raise UnknownInstance(f"unknown instance {instance!r}; known: {', '.join(reg)}")

    records = []
    for name in names:
        entry = reg[name]
        for check in entry.suite_checks(suite):
            rng = np.random.default_rng(stable_seed(seed, f"{name}:{check.name}"))
            ctx = RunContext(samples=samples, tol=tol, fd_tol=fd_tol, rng=rng, cfg=DEFAULT)
            started = time.perf_counter()
            try:
                rep = check.run(ctx)
                record = {
                    "instance": name,
                    "name": check.name,
                    "anchor": check.anchor,
                    "pass": bool(rep.passed),
                    "max_dev": float(rep.max_deviation),
                    "n": int(rep.samples),
                }
                if rep.detail:
                    record["detail"] = rep.detail
            except Exception as exc:
                record = {
                    "instance": name,
                    "name": check.name,
                    "anchor": check.anchor,
                    "pass": False,
                    "max_dev": float("inf"),
                    "n": 0,
                    "detail": f"{type(exc).__name__}: {exc}",
                }
            record["elapsed"] = round(time.perf_counter() - started, 3)
            records.append(record)

    return {
        "version": __version__,
        "config": {
            "instance": instance,
            "suite": suite,
            "samples": samples,
            "tol": tol,
            "fd_tol": fd_tol,
            "seed": seed,
        },
        "checks": records,
        "pass": all(r["pass"] for r in records),
    }


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "list":
        for name, entry in registry().items():
            print(f"{name:24s} {entry.summary}")
        return 0

    if args.command != "verify":
        parser.print_usage(sys.stderr)
        return 2

    try:
        report = run_verify(args.instance, args.suite, args.samples,
                            args.tol, args.fd_tol, args.seed)
    except (UnknownInstance, UnknownSuite) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        failed = sum(1 for r in report["checks"] if not r["pass"])
        print(f"{len(report['checks'])} checks, {failed} failed -> {args.out}")
    else:
        print(text)
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
