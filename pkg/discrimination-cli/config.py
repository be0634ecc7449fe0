"""
Sweep Configuration
===================

Turns command-line flags and optional JSON config files into validated
SweepConfig objects. Flags override file values; the SEED environment
variable is the fallback for --seed.

Config file schema (all keys optional except where a strategy needs them):

    {
      "strategy": "usd",
      "angles_deg": [5, 10, 15] or "5:45:5",
      "p": 0.54,                                          mc / minerror
      "rho0": {"r11": 0.5, "r12_re": 0.27, "r12_im": 0.0} usd, or
      "rho0": {"p": 0.54, "gamma_deg": 45},
      "n_trials": 100000,
      "seed": 7,
      "workers": 4,
      "jitter_draws": 500,
      "poisson": false,
      "dwell_s": 50.0,
      "imperfection": {"jitter_deg": 2, "offsets_deg": {"HWP2": 1}, "misalignment": 0},
      "out": "usd.csv"
    }
"""

from __future__ import annotations

import json
import math
import os
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from discrimination.errors import ValidationError
from discrimination.montecarlo import (
    DEFAULT_DWELL_S,
    DEFAULT_JITTER_DRAWS,
    DEFAULT_TRIALS,
    DEFAULT_WORKERS,
    ImperfectionModel,
    SweepConfig,
    SweepStrategy,
)
from discrimination.states import Rho0Params, rho0_from_input_polarization

# Measured degree of polarization of the source
DEFAULT_P = 0.54
DEFAULT_ANGLES = "5:45:5"
# PBS1 image of the p = 0.54 source at 45 degrees
DEFAULT_RHO0 = Rho0Params(r11=0.5, r22=0.5, r12=0.27)
SEED_ENV = "SEED"


def parse_range(text: str) -> tuple[float, ...]:
    """
    Parse "start:stop:step" (stop included) or a comma-separated list of degrees.

    Raises:
        ValidationError: on malformed input or a non-positive step
    """
    try:
        if ":" not in text:
            return tuple(float(part) for part in text.split(","))
        start, stop, step = (float(part) for part in text.split(":"))
    except ValueError:
        raise ValidationError(f"angle range must be 'start:stop:step' or a list, got {text!r}") from None
    if step <= 0 or stop < start:
        raise ValidationError(f"angle range {text!r} needs step > 0 and stop >= start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return tuple(round(float(value), 10) for value in start + step * np.arange(count))


def parse_rho0(text: str) -> Rho0Params:
    """Parse "R11,R12_RE[,R12_IM]"; r22 is 1 - r11."""
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError:
        raise ValidationError(f"rho0 must be 'r11,r12_re[,r12_im]', got {text!r}") from None
    if len(values) not in (2, 3):
        raise ValidationError(f"rho0 must be 'r11,r12_re[,r12_im]', got {text!r}")
    r11, r12_re, r12_im = (*values, 0.0) if len(values) == 2 else values
    return Rho0Params(r11=r11, r22=1.0 - r11, r12=complex(r12_re, r12_im))


def rho0_from_mapping(data: Mapping[str, Any]) -> Rho0Params:
    """rho0 block of a config file: explicit entries or a (p, gamma_deg) source."""
    if "gamma_deg" in data:
        return rho0_from_input_polarization(float(data["p"]), math.radians(float(data["gamma_deg"])))
    try:
        r11 = float(data["r11"])
    except KeyError:
        raise ValidationError(f"rho0 needs r11 or p/gamma_deg, got keys {sorted(data)}") from None
    r12 = complex(float(data.get("r12_re", 0.0)), float(data.get("r12_im", 0.0)))
    return Rho0Params(r11=r11, r22=1.0 - r11, r12=r12)


def parse_offsets(entries: list[str] | None) -> dict[str, float]:
    """Parse repeated NAME=DEG flags into a plate -> degrees mapping."""
    offsets: dict[str, float] = {}
    for entry in entries or []:
        name, sep, value = entry.partition("=")
        try:
            if not sep or not name:
                raise ValueError
            offsets[name.strip()] = float(value)
        except ValueError:
            raise ValidationError(f"offset must be NAME=DEG, got {entry!r}") from None
    return offsets


def resolve_seed(seed: int | None, environ: Mapping[str, str] | None = None) -> int:
    """--seed, else $SEED, else 0."""
    if seed is not None:
        return seed
    environ = os.environ if environ is None else environ
    value = environ.get(SEED_ENV)
    if value is None:
        return 0
    try:
        return int(value)
    except ValueError:
        raise ValidationError(f"{SEED_ENV} must be an integer, got {value!r}") from None


def load_config_file(path: Path) -> dict[str, Any]:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ValidationError(f"cannot read config file {path}: {e}") from e
    if not isinstance(data, dict):
        raise ValidationError(f"config file {path} must hold a JSON object")
    return data


def _pick(flag: Any, file_values: Mapping[str, Any], key: str, default: Any) -> Any:
    if flag is not None:
        return flag
    return file_values.get(key, default)


def _angles(value: Any) -> tuple[float, ...]:
    if isinstance(value, str):
        return parse_range(value)
    return tuple(float(angle) for angle in value)


def _imperfection(args: Any, file_values: Mapping[str, Any]) -> ImperfectionModel:
    block = file_values.get("imperfection", {})
    offsets = dict(block.get("offsets_deg", {}))
    offsets.update(parse_offsets(getattr(args, "offset", None)))
    return ImperfectionModel.from_degrees(
        offsets_deg=offsets,
        jitter_deg=float(_pick(getattr(args, "jitter_deg", None), block, "jitter_deg", 0.0)),
        misalignment=float(_pick(getattr(args, "misalignment", None), block, "misalignment", 0.0)),
    )


def _state_parameters(
    strategy: SweepStrategy, args: Any, file_values: Mapping[str, Any]
) -> tuple[float | None, Rho0Params | None]:
    if strategy is not SweepStrategy.USD:
        return float(_pick(args.p, file_values, "p", DEFAULT_P)), None
    if args.rho0 is not None:
        return None, parse_rho0(args.rho0)
    if args.gamma is not None:
        p = args.p if args.p is not None else DEFAULT_P
        return None, rho0_from_input_polarization(p, math.radians(args.gamma))
    if args.p is not None:
        raise ValidationError("usd sweeps take --rho0 or --p together with --gamma")
    if "rho0" in file_values:
        return None, rho0_from_mapping(file_values["rho0"])
    return None, DEFAULT_RHO0


def build_sweep_config(strategy: SweepStrategy, args: Any) -> tuple[SweepConfig, Path]:
    """
    Merge flags over the optional --config file.

    Returns:
        (validated SweepConfig, CSV output path)

    Raises:
        ValidationError: on any invalid value or a file naming another strategy
    """
    file_values = load_config_file(args.config) if args.config else {}
    if file_values.get("strategy", strategy) != strategy:
        raise ValidationError(
            f"config file is for strategy {file_values['strategy']!r}, command runs {strategy.value!r}"
        )
    p, rho0 = _state_parameters(strategy, args, file_values)
    config = SweepConfig(
        strategy=strategy,
        angles_deg=_angles(_pick(args.angle_range, file_values, "angles_deg", DEFAULT_ANGLES)),
        p=p,
        rho0=rho0,
        n_trials=int(_pick(args.n, file_values, "n_trials", DEFAULT_TRIALS)),
        seed=resolve_seed(_pick(args.seed, file_values, "seed", None)),
        imperfection=_imperfection(args, file_values),
        jitter_draws=int(_pick(args.jitter_draws, file_values, "jitter_draws", DEFAULT_JITTER_DRAWS)),
        workers=int(_pick(args.workers, file_values, "workers", DEFAULT_WORKERS)),
        poisson=bool(args.poisson or file_values.get("poisson", False)),
        dwell_s=float(_pick(args.dwell, file_values, "dwell_s", DEFAULT_DWELL_S)),
    )
    out = Path(_pick(args.out, file_values, "out", f"{strategy.value}_sweep.csv"))
    return config, out
