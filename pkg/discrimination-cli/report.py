"""
Reports
=======

CSV and JSON writers and the printed summaries of the discrimination CLI.
"""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path
from typing import Any, TextIO

import numpy as np

from discrimination.montecarlo import CSV_COLUMNS, SweepResult, row_deviations
from discrimination.optics import OpticalCircuit
from discrimination.quantum import TOL, Povm
from discrimination.strategies import StrategyReport


def print_banner(title: str, stream: TextIO | None = None) -> None:
    stream = stream or sys.stdout
    print("\n" + "=" * 70, file=stream)
    print(f"  {title}", file=stream)
    print("=" * 70 + "\n", file=stream)


def write_csv(result: SweepResult, path: Path) -> None:
    """Write the sweep rows; identical configs give identical bytes."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(result.to_rows())


def sweep_summary(result: SweepResult, max_sigma: float, out: Path) -> dict[str, Any]:
    config = result.config
    return {
        "strategy": config.strategy.value,
        "points": len(config.angles_deg),
        "rows": len(result.rows),
        "seed": config.seed,
        "ideal": config.imperfection.is_ideal,
        "max_sigma_deviation": max_sigma,
        "out": str(out),
    }


def print_sweep_summary(result: SweepResult, max_sigma: float, out: Path) -> None:
    config = result.config
    print_banner(f"{config.strategy.value.upper()} SWEEP")
    print(f"{'angle':>7} {'prep':>4} {'inconcl':>9} {'APD1':>9} {'APD2':>9} {'error':>9} {'Q':>9} {'C':>9} {'sigma':>6}")
    for row in result.rows:
        deviation = max(row_deviations(row).values())
        error = "-" if row.error_rate is None else f"{row.error_rate:.5f}"
        print(
            f"{row.angle_deg:7.2f} {row.prepared:>4} {row.frac_inconclusive:9.5f} {row.frac_apd1:9.5f} "
            f"{row.frac_apd2:9.5f} {error:>9} {row.analytic_q:9.5f} {row.analytic_c:9.5f} {deviation:6.2f}"
        )
    print(f"\nRows written: {len(result.rows)} -> {out}")
    print(f"Max deviation from the closed forms: {max_sigma:.2f} sigma")


def _matrix_json(matrix: np.ndarray) -> dict[str, list[list[float]]]:
    return {"real": np.real(matrix).tolist(), "imag": np.imag(matrix).tolist()}


def povm_json(povm: Povm) -> dict[str, Any]:
    return {label: _matrix_json(element) for label, element in povm}


def _snap(value: float) -> float:
    """Round-off residue below the construction tolerance prints as 0."""
    return 0.0 if abs(value) < TOL.construction else value


def analysis_json(
    report: StrategyReport, summary: dict[str, float], params: dict[str, Any], circuit: OpticalCircuit | None
) -> dict[str, Any]:
    """Single-point report: headline figures, all predictions, POVM and circuit."""
    return {
        "strategy": report.strategy.value,
        "params": params,
        **{key: _snap(value) for key, value in summary.items()},
        "predicted": {key: _snap(value) for key, value in report.predicted.items()},
        "povm": povm_json(report.povm),
        "circuit": None if circuit is None else circuit.to_dict(),
    }


def dump_json(data: Any, stream: TextIO | None = None) -> None:
    print(json.dumps(data, indent=2), file=stream or sys.stdout)
