"""Command-line front end.

Usage::

    quatdyn simulate --config scenario.cfg --output traj.csv [--summary summary.json]
                     [--dt DT] [--duration SECONDS]

Exit status: 0 on success, 2 when the scenario is invalid, 3 when the state
becomes non-finite during integration.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dynamics import NonFiniteStateError
from .simulation import ConfigError, Violation, format_csv, load_config, run_simulation, validate

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NONFINITE = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quatdyn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sim = sub.add_parser("simulate", help="propagate a rigid-body scenario with RK4")
    sim.add_argument("--config", required=True, type=Path, help="scenario file (key = value lines)")
    sim.add_argument("--output", required=True, type=Path, help="trajectory CSV path")
    sim.add_argument("--summary", type=Path, help="diagnostics JSON path (default: stdout)")
    sim.add_argument("--dt", type=float, help="override the step size [s]")
    sim.add_argument("--duration", type=float, help="override the duration [s]")
    return parser


def _report(violations) -> None:
    for v in violations:
        print(f"config error: {v}", file=sys.stderr)


def simulate(args: argparse.Namespace) -> int:
    try:
        config = load_config(args.config)
    except OSError as exc:
        _report([Violation("config", str(args.config), f"cannot read file ({exc.strerror})")])
        return EXIT_CONFIG
    except ConfigError as exc:
        _report(exc.violations)
        return EXIT_CONFIG

    config = config.with_overrides(dt=args.dt, duration=args.duration)
    violations = validate(config)
    if violations:
        _report(violations)
        return EXIT_CONFIG

    try:
        result = run_simulation(config)
    except NonFiniteStateError as exc:
        print(f"integration error: non-finite state at t = {exc.t!r}", file=sys.stderr)
        return EXIT_NONFINITE

    with open(args.output, "w", newline="\n") as fh:
        fh.write(format_csv(result.rows))
    text = json.dumps(result.summary(config), indent=2) + "\n"
    if args.summary is None:
        sys.stdout.write(text)
    else:
        args.summary.write_text(text)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "simulate":
        return simulate(args)
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
