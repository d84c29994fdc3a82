"""Command-line front end for the experiment sweeps.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .config import ConfigError, default_config, load_config, with_overrides
from .experiments import (
    TrialFailure,
    run_adr_vs_k,
    run_fixed_budget,
    run_payload_sweep,
    worker_count,
)
from .hosvd import ConvergenceError
from .selftest import run_selftest

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irskron",
        description=(
            "IRS phase-shift feedback compression experiments: payload "
            "ratios and achievable data rates over Rician channels."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("payload-ratio", "payload comparison per factorization (no RNG)"),
        ("adr-vs-k", "mean data rate versus Rician factor"),
        ("fixed-budget", "data rate under a hard feedback bit budget"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", metavar="PATH", help="INI config overriding the defaults")
        cmd.add_argument("--seed", type=int, metavar="U64", help="master RNG seed")
        cmd.add_argument("--trials", type=int, metavar="N", help="Monte Carlo trials")
        cmd.add_argument("--out", metavar="PATH", help="CSV output path (default <command>.csv)")
        cmd.add_argument(
            "--full-scale",
            action="store_true",
            help="full-scale defaults (N=1024) instead of desk scale (N=256)",
        )
        cmd.add_argument(
            "--plot",
            action="store_true",
            help="also write an SVG chart next to the CSV",
        )
    sub.add_parser("selftest", help="quick numerical self-checks")
    return parser


_RUNNERS = {
    "payload-ratio": run_payload_sweep,
    "adr-vs-k": run_adr_vs_k,
    "fixed-budget": run_fixed_budget,
}


def _run_experiment(args: argparse.Namespace) -> int:
    if args.config:
        cfg = load_config(args.config, args.command, full_scale=args.full_scale)
    else:
        cfg = default_config(args.command, full_scale=args.full_scale)
    cfg = with_overrides(cfg, seed=args.seed, trials=args.trials)
    worker_count()  # fail fast on a bad IRSKRON_WORKERS value

    csv_text = _RUNNERS[args.command](cfg)

    out = Path(args.out) if args.out else Path(f"{args.command}.csv")
    out.write_text(csv_text, encoding="utf-8")
    rows = csv_text.count("\n") - 1
    print(f"wrote {out} ({rows} rows)")

    if args.plot:
        from . import plot

        svg = out.with_suffix(".svg")
        if args.command == "payload-ratio":
            plot.plot_payload_sweep(csv_text, svg)
        else:
            plot.plot_adr_sweep(csv_text, svg)
        print(f"wrote {svg}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "selftest":
            return run_selftest()
        return _run_experiment(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (TrialFailure, ConvergenceError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
