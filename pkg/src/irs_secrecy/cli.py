"""Command-line entry point.

Subcommands:
    convergence --config <file>   per-channel rate traces (CSV + gnuplot script)
    sweep       --config <file>   scheme comparison over the power grid
    solve       --config <file> --channel-seed <u64>   one instance, JSON report

Exit codes: 0 on success, 1 on usage/config/IO errors, 2 when a run finished
but an output invariant audit failed (non-monotone trace, baseline ordering).
"""

from __future__ import annotations

import argparse
import json
import sys

from .experiments import load_config, run_convergence, run_sweep, solve_single


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irs-secrecy",
        description="Secrecy-rate experiments for reflecting-surface-assisted MIMO wiretap channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", required=True, help="experiment config file")
        p.add_argument("--output-dir", default=None, help="override the output directory")
        p.add_argument(
            "--no-timestamp",
            action="store_true",
            help="suppress the timestamp header line in CSV output",
        )

    add_common(sub.add_parser("convergence", help="export per-channel convergence traces"))
    add_common(sub.add_parser("sweep", help="compare AO against the phase baselines"))
    solve = sub.add_parser("solve", help="solve a single seeded instance, print JSON")
    solve.add_argument("--config", required=True, help="experiment config file")
    solve.add_argument("--channel-seed", required=True, type=int, help="channel seed (u64)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.command == "solve":
        report = solve_single(cfg, args.channel_seed)
        print(json.dumps(report, indent=2))
        return 0

    if getattr(args, "no_timestamp", False):
        import dataclasses

        cfg = dataclasses.replace(cfg, timestamp=False)
    runner = run_convergence if args.command == "convergence" else run_sweep
    try:
        path, violations = runner(cfg, output_dir=args.output_dir)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    if violations:
        for v in violations:
            print(f"audit failure: {v}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
