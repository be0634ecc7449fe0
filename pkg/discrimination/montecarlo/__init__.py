"""Seeded click sampling, estimators and parameter sweeps."""

from .estimators import (
    Estimate,
    error_rate,
    estimate_confidence,
    proportion,
    wilson_interval,
    wilson_z,
)
from .sampling import (
    DEFAULT_COUNT_RATE,
    DEFAULT_JITTER_DRAWS,
    DEFAULT_TRIALS,
    SOURCE_G2_ZERO,
    ImperfectionModel,
    TrialBatch,
    derive_seed,
    mean_perturbed_distribution,
    perturbed_distribution,
    sample_clicks,
    sample_imperfect,
)
from .sweep import (
    CSV_COLUMNS,
    DEFAULT_DWELL_S,
    DEFAULT_WORKERS,
    SweepConfig,
    SweepResult,
    SweepRow,
    SweepStrategy,
    max_sigma_deviation,
    row_deviations,
    run_sweep,
    run_sweep_async,
)

__all__ = [
    "CSV_COLUMNS",
    "DEFAULT_COUNT_RATE",
    "DEFAULT_DWELL_S",
    "DEFAULT_JITTER_DRAWS",
    "DEFAULT_TRIALS",
    "DEFAULT_WORKERS",
    "SOURCE_G2_ZERO",
    "Estimate",
    "ImperfectionModel",
    "SweepConfig",
    "SweepResult",
    "SweepRow",
    "SweepStrategy",
    "TrialBatch",
    "derive_seed",
    "error_rate",
    "estimate_confidence",
    "max_sigma_deviation",
    "mean_perturbed_distribution",
    "perturbed_distribution",
    "proportion",
    "row_deviations",
    "run_sweep",
    "run_sweep_async",
    "sample_clicks",
    "sample_imperfect",
    "wilson_interval",
    "wilson_z",
]
