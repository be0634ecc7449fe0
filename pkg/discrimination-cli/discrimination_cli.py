#!/usr/bin/env python3
"""
Discrimination CLI
==================

Runs Monte Carlo sweeps of the discrimination networks, single-point analytic
reports and the maximum-confidence / minimum-error gap search.

Example Usage:
    python discrimination_cli.py mc-sweep --p 0.54 --beta-range 5:45:5 --n 100000 --seed 7 --out mc.csv
    python discrimination_cli.py usd-sweep --alpha-range 5:45:5 --jitter-deg 2 --offset HWP2=1 --offset "HWP2'=1"
    python discrimination_cli.py analyze --strategy mc --p 0.54 --angle 45

Exit codes: 0 success, 1 other failure, 2 invalid input, 3 acceptance breach.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Any

from discrimination.errors import DiscriminationError, ValidationError
from discrimination.montecarlo import SweepStrategy, max_sigma_deviation, run_sweep
from discrimination.optics import build_mc_circuit, build_minerror_circuit, build_usd_circuit
from discrimination.states import rho0_from_input_polarization
from discrimination.strategies import (
    max_confidence_gap,
    max_confidence_report,
    minerror_confidence,
    minerror_report,
    partially_polarized_problem,
    usd_report,
)

from config import DEFAULT_P, DEFAULT_RHO0, build_sweep_config, parse_rho0
from report import analysis_json, dump_json, print_banner, print_sweep_summary, sweep_summary, write_csv

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2
EXIT_ACCEPTANCE = 3

# Ideal sweeps must stay within this many Wilson sigmas of the closed forms
ACCEPTANCE_SIGMAS = 4.0
MAX_GAP = 0.02

SWEEP_COMMANDS = {
    "mc-sweep": (SweepStrategy.MC, "--beta-range"),
    "minerror-sweep": (SweepStrategy.MINERROR, "--beta-range"),
    "usd-sweep": (SweepStrategy.USD, "--alpha-range"),
}


def _add_sweep_parser(subparsers: Any, command: str, strategy: SweepStrategy, range_flag: str) -> None:
    parser = subparsers.add_parser(command, help=f"Sampled {strategy.value} sweep written as CSV")
    parser.add_argument(range_flag, dest="angle_range", type=str, default=None,
                        help="Half angles in degrees, start:stop:step or a list (default: 5:45:5)")
    parser.add_argument("--p", type=float, default=None,
                        help=f"Degree of polarization (default: {DEFAULT_P})")
    if strategy is SweepStrategy.USD:
        parser.add_argument("--rho0", type=str, default=None,
                            help="Common state as r11,r12_re[,r12_im] (default: 0.5,0.27)")
        parser.add_argument("--gamma", type=float, default=None,
                            help="Derive rho0 from a source at this polarization angle (degrees) and --p")
    parser.add_argument("--n", type=int, default=None, help="Trials per angle and prepared state")
    parser.add_argument("--seed", type=int, default=None, help="Master seed (default: $SEED or 0)")
    parser.add_argument("--out", type=Path, default=None, help=f"CSV path (default: {strategy.value}_sweep.csv)")
    parser.add_argument("--config", type=Path, default=None, help="JSON sweep config; flags override it")
    parser.add_argument("--jitter-deg", type=float, default=None, help="Plate jitter sigma in degrees")
    parser.add_argument("--jitter-draws", type=int, default=None, help="Jitter realizations per batch")
    parser.add_argument("--offset", action="append", default=None, metavar="NAME=DEG",
                        help="Static plate offset, e.g. HWP2=1 (repeatable)")
    parser.add_argument("--misalignment", type=float, default=None,
                        help="Weight of the maximally mixed state in the prepared input")
    parser.add_argument("--poisson", action="store_true", help="Draw trial counts from Poisson(rate * dwell)")
    parser.add_argument("--dwell", type=float, default=None, help="Dwell time per angle in seconds")
    parser.add_argument("--workers", type=int, default=None, help="Parallel sweep points")
    parser.add_argument("--json", action="store_true", help="Print the summary as JSON")
    parser.set_defaults(handler=cmd_sweep, strategy=strategy)


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        description="Mixed-state discrimination - analytic strategies and sampled optical networks",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Maximum-confidence sweep against the closed form
  python discrimination_cli.py mc-sweep --p 0.54 --beta-range 5:45:5 --n 100000 --seed 7

  # Unambiguous sweep with plate imperfections
  python discrimination_cli.py usd-sweep --jitter-deg 2 --offset HWP2=1 --offset "HWP2'=1"

  # Single-point report
  python discrimination_cli.py analyze --strategy usd --angle 45

  # Largest C - C^E over beta
  python discrimination_cli.py gap --p 0.54

Environment Variables:
  SEED    Fallback for --seed (default 0)
        """,
    )
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    parser.add_argument("--quiet", action="store_true", help="Warnings only")
    subparsers = parser.add_subparsers(dest="command", required=True)

    for command, (strategy, range_flag) in SWEEP_COMMANDS.items():
        _add_sweep_parser(subparsers, command, strategy, range_flag)

    analyze = subparsers.add_parser("analyze", help="Closed-form report for one parameter point (JSON)")
    analyze.add_argument("--strategy", type=SweepStrategy, choices=list(SweepStrategy), required=True)
    analyze.add_argument("--angle", type=float, required=True, help="beta (mc, minerror) or alpha (usd) in degrees")
    analyze.add_argument("--p", type=float, default=None, help=f"Degree of polarization (default: {DEFAULT_P})")
    analyze.add_argument("--rho0", type=str, default=None, help="usd: r11,r12_re[,r12_im]")
    analyze.add_argument("--gamma", type=float, default=None, help="usd: source polarization angle in degrees")
    analyze.add_argument("--out", type=Path, default=None, help="Write the JSON here instead of stdout")
    analyze.set_defaults(handler=cmd_analyze)

    gap = subparsers.add_parser("gap", help="Largest maximum-confidence advantage over minimum error")
    gap.add_argument("--p", type=float, default=DEFAULT_P, help=f"Degree of polarization (default: {DEFAULT_P})")
    gap.add_argument("--step", type=float, default=0.1, help="Grid step in degrees (default: 0.1)")
    gap.add_argument("--max-gap", type=float, default=MAX_GAP,
                     help=f"Exit 3 when the gap reaches this value (default: {MAX_GAP})")
    gap.add_argument("--json", action="store_true", help="Print the result as JSON")
    gap.set_defaults(handler=cmd_gap)

    return parser.parse_args(argv)


def cmd_sweep(args: argparse.Namespace) -> int:
    config, out = build_sweep_config(args.strategy, args)
    result = run_sweep(config)
    write_csv(result, out)
    max_sigma = max_sigma_deviation(result)
    if args.json:
        dump_json(sweep_summary(result, max_sigma, out))
    else:
        print_sweep_summary(result, max_sigma, out)
    if config.imperfection.is_ideal and max_sigma > ACCEPTANCE_SIGMAS:
        print(f"Error: sweep deviates {max_sigma:.2f} sigma from the closed forms (limit {ACCEPTANCE_SIGMAS})")
        return EXIT_ACCEPTANCE
    return EXIT_OK


def _analysis(args: argparse.Namespace) -> dict[str, Any]:
    angle = math.radians(args.angle)
    strategy: SweepStrategy = args.strategy
    if strategy is SweepStrategy.USD:
        if args.rho0 is not None:
            rho0 = parse_rho0(args.rho0)
        elif args.gamma is not None:
            rho0 = rho0_from_input_polarization(args.p if args.p is not None else DEFAULT_P, math.radians(args.gamma))
        else:
            rho0 = DEFAULT_RHO0
        report = usd_report(angle, rho0)
        circuit, _ = build_usd_circuit(angle, 1, rho0)
        params = {"alpha_deg": args.angle, "r11": rho0.r11, "r12_re": rho0.r12.real, "r12_im": rho0.r12.imag}
        summary = {"Q": report.predicted["Q_opt"], "C1": report.predicted["C1"],
                   "C2": report.predicted["C2"], "P_E": report.predicted["P_E"]}
        return analysis_json(report, summary, params, circuit.measurement_only())

    if args.rho0 is not None or args.gamma is not None:
        raise ValidationError(f"{strategy.value} analysis takes --p, not --rho0/--gamma")
    p = args.p if args.p is not None else DEFAULT_P
    params = {"p": p, "beta_deg": args.angle}
    if strategy is SweepStrategy.MC:
        report = max_confidence_report(p, angle)
        circuit, _ = build_mc_circuit(p, angle, "+")
        summary = {"Q": report.predicted["Q_opt"], "C": report.predicted["C1"],
                   "C_minerr": report.predicted["C_minerr"], "P_E": report.predicted["P_E"]}
    else:
        report = minerror_report(partially_polarized_problem(p, angle))
        circuit, _ = build_minerror_circuit(p, angle, "+")
        summary = {"Q": 0.0, "C": minerror_confidence(p, angle), "P_E": report.predicted["P_E"]}
    return analysis_json(report, summary, params, circuit.measurement_only())


def cmd_analyze(args: argparse.Namespace) -> int:
    data = _analysis(args)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        with open(args.out, "w", encoding="utf-8") as f:
            dump_json(data, f)
        print(f"Report written to {args.out}")
    else:
        dump_json(data)
    return EXIT_OK


def cmd_gap(args: argparse.Namespace) -> int:
    beta, gap = max_confidence_gap(args.p, step_deg=args.step)
    if args.json:
        dump_json({"p": args.p, "beta_deg": math.degrees(beta), "gap": gap, "max_gap": args.max_gap})
    else:
        print_banner("MAXIMUM-CONFIDENCE GAP")
        print(f"p = {args.p}: largest C - C^E = {gap:.6f} at beta = {math.degrees(beta):.1f} deg")
    if gap >= args.max_gap:
        print(f"Error: gap {gap:.6f} is not below {args.max_gap}")
        return EXIT_ACCEPTANCE
    return EXIT_OK


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: list[str] | None = None) -> int:
    """Main entry point; returns the process exit code."""
    args = parse_args(argv)
    _configure_logging(args)
    try:
        return args.handler(args)
    except ValidationError as e:
        print(f"Error: {e}")
        return EXIT_INVALID
    except DiscriminationError as e:
        print(f"Error: {e}")
        return EXIT_FAILURE
    except KeyboardInterrupt:
        print("\n\nInterrupted by user")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
