"""Command line entry point: ``mlineq [flags]`` runs the suite, ``mlineq replay FILE`` re-checks a witness."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness
from .checks import replay
from .harness import ConfigError


class _Parser(argparse.ArgumentParser):
    # argparse already exits with 2 on usage errors; keep the message on stderr
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def run_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mlineq", description="Run the randomized matrix-inequality check suite.")
    p.add_argument("--checks", help="comma-separated check families (default: all)")
    p.add_argument("--q", type=int, help="matrix dimension (default 3)")
    p.add_argument("--k", type=int, help="map arity (default 2)")
    p.add_argument("--n", type=int, help="tuple length for means (default 2)")
    p.add_argument("--trials", type=int, help="random trials per check (default 200)")
    p.add_argument("--seed", type=int, help="master seed (default 42)")
    p.add_argument("--tol", type=float, help="Loewner tolerance, relative (default 1e-8)")
    p.add_argument("--spectrum", metavar="m,M", help="spectral interval of random inputs (default 1,2)")
    p.add_argument("--out", help="report path (default report.json; '-' for stdout)")
    p.add_argument("--witness-dir", help="directory for witness files (default witnesses)")
    p.add_argument("--jobs", type=int, help="worker processes (default 1)")
    p.add_argument("--config", help="JSON config file; flags and MLINEQ_* variables override it")
    p.add_argument("--list", action="store_true", help="list check families and exit")
    return p


def replay_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mlineq replay", description="Re-evaluate a witness file.")
    p.add_argument("witness", help="witness JSON written by a suite run")
    return p


def parse_config(argv: list[str], environ=None) -> harness.SuiteConfig:
    """Parse run flags into a SuiteConfig; raises SystemExit(2) or ConfigError on bad input."""
    args = run_parser().parse_args(argv)
    flags = {
        "checks": args.checks,
        "q": args.q,
        "k": args.k,
        "n": args.n,
        "trials": args.trials,
        "seed": args.seed,
        "tol": args.tol,
        "interval": args.spectrum,
        "out": args.out,
        "witness_dir": args.witness_dir,
        "jobs": args.jobs,
    }
    return harness.build_config(flags, args.config, environ)


def _replay(argv) -> int:
    args = replay_parser().parse_args(argv)
    try:
        witness = json.loads(Path(args.witness).read_text())
        raw, scaled = replay(witness)
    except (OSError, ValueError, KeyError) as exc:
        print(f"mlineq replay: {exc}", file=sys.stderr)
        return 2
    recorded = witness.get("worst_margin")
    holds = scaled >= -witness.get("tol", 0.0)
    print(f"{witness.get('name')}: margin {raw:.17g} (recorded {recorded!r}), holds={holds}")
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if argv and argv[0] == "replay":
        return _replay(argv[1:])
    if "--list" in argv:
        print("\n".join(harness.FAMILIES))
        return 0
    try:
        config = parse_config(argv)
    except ConfigError as exc:
        print(f"mlineq: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    report = harness.run_suite(config)
    try:
        out = None if config.out == "-" else config.out
        text = harness.emit_report(report, out, config.witness_dir)
    except OSError as exc:
        print(f"mlineq: cannot write report: {exc}", file=sys.stderr)
        return 2
    if out is None:
        sys.stdout.write(text)
    n_bad = len(report.unexpected)
    summary = f"{len(report.results)} checks, {n_bad} unexpected, aggregate {'pass' if report.aggregate else 'FAIL'}"
    print(summary, file=sys.stderr if out is None else sys.stdout)
    for r in report.unexpected:
        print(f"  {r.name}: margin {r.worst_margin:.3e}{' ' + r.error if r.error else ''}", file=sys.stderr)
    return 0 if report.aggregate else 1
