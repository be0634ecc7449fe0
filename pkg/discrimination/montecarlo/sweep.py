"""
Parameter Sweeps
================

Runs the sampled bench over a grid of half angles, one row per angle and
prepared state, next to the closed-form predictions.

Every (angle index, prepared index) pair draws from its own stream split off
the master seed, so a sweep is reproducible whatever the number of workers.
"""

from __future__ import annotations

import asyncio
import logging
import math
import os
from dataclasses import dataclass, field, fields
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from typing import Any

import numpy as np

from ..errors import DegenerateFilterError, UndefinedConfidenceError, ValidationError
from ..optics import (
    MC_PLATES,
    USD_PLATES,
    Network,
    build_mc_circuit,
    build_minerror_circuit,
    build_usd_circuit,
)
from ..quantum import Detector
from ..states import PartialPolarizationParams, Rho0Params
from ..strategies import (
    helstrom_error,
    max_confidence_report,
    minerror_confidence,
    partially_polarized_problem,
    usd_report,
)
from .estimators import Estimate, error_rate, estimate_confidence, proportion
from .sampling import (
    DEFAULT_COUNT_RATE,
    DEFAULT_JITTER_DRAWS,
    DEFAULT_TRIALS,
    ImperfectionModel,
    TrialBatch,
    derive_seed,
    sample_imperfect,
)

logger = logging.getLogger(__name__)

DEFAULT_WORKERS = min(8, os.cpu_count() or 1)
# 50 s at 2000 clicks/s gives the default trial count on average
DEFAULT_DWELL_S = 50.0
MAX_ANGLE_DEG = 45.0

CSV_COLUMNS = (
    "strategy",
    "angle_deg",
    "prepared",
    "n_trials",
    "n_apd0",
    "n_apd0p",
    "n_apd1",
    "n_apd2",
    "frac_inconclusive",
    "frac_apd1",
    "frac_apd2",
    "error_rate",
    "ci_low",
    "ci_high",
    "analytic_q",
    "analytic_c",
    "analytic_helstrom",
)


class SweepStrategy(StrEnum):
    MC = "mc"
    USD = "usd"
    MINERROR = "minerror"


PREPARED_LABELS: dict[SweepStrategy, tuple[str, str]] = {
    SweepStrategy.MC: ("+", "-"),
    SweepStrategy.MINERROR: ("+", "-"),
    SweepStrategy.USD: ("1", "2"),
}


@dataclass(frozen=True)
class SweepConfig:
    """
    Everything that determines a sweep's output.

    mc and minerror sweeps vary beta and take the degree of polarization p;
    usd sweeps vary alpha and take rho_0. In Poisson mode the trial count of
    each angle is drawn from Poisson(count_rate * dwell_s) and shared by both
    prepared states; n_trials is ignored.
    """

    strategy: SweepStrategy
    angles_deg: tuple[float, ...]
    p: float | None = None
    rho0: Rho0Params | None = None
    n_trials: int = DEFAULT_TRIALS
    seed: int = 0
    imperfection: ImperfectionModel = field(default_factory=ImperfectionModel)
    jitter_draws: int = DEFAULT_JITTER_DRAWS
    workers: int = DEFAULT_WORKERS
    poisson: bool = False
    dwell_s: float = DEFAULT_DWELL_S
    count_rate: float = DEFAULT_COUNT_RATE

    def __post_init__(self) -> None:
        try:
            strategy = SweepStrategy(self.strategy)
        except ValueError:
            raise ValidationError(
                f"unknown strategy {self.strategy!r}; expected one of {[s.value for s in SweepStrategy]}"
            ) from None
        object.__setattr__(self, "strategy", strategy)
        angles = tuple(float(angle) for angle in self.angles_deg)
        if not angles:
            raise ValidationError("angle grid must not be empty")
        outside = [angle for angle in angles if not 0.0 <= angle <= MAX_ANGLE_DEG]
        if outside:
            raise ValidationError(f"angles must lie in [0, 45] degrees, got {outside}")
        object.__setattr__(self, "angles_deg", angles)
        self._check_state_parameters()
        if self.n_trials < 1:
            raise ValidationError(f"n_trials must be at least 1, got {self.n_trials!r}")
        if not 0 <= self.seed < 2**64:
            raise ValidationError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.workers < 1:
            raise ValidationError(f"workers must be at least 1, got {self.workers!r}")
        if self.jitter_draws < 1:
            raise ValidationError(f"jitter_draws must be at least 1, got {self.jitter_draws!r}")
        if self.dwell_s <= 0 or self.count_rate <= 0:
            raise ValidationError(
                f"dwell time and count rate must be positive, got {self.dwell_s!r} and {self.count_rate!r}"
            )
        plates = USD_PLATES if strategy is SweepStrategy.USD else MC_PLATES
        unknown = sorted(set(self.imperfection.hwp_static_offset) - set(plates))
        if unknown:
            raise ValidationError(f"unknown plates {unknown} for {strategy}; plates are {list(plates)}")

    def _check_state_parameters(self) -> None:
        if self.strategy is SweepStrategy.USD:
            if self.rho0 is None or self.p is not None:
                raise ValidationError("usd sweeps take rho0 and no p")
            if 0.0 in self.angles_deg:
                raise DegenerateFilterError("alpha = 0 gives a filter that always fails (Q = 1)")
            return
        if self.p is None or self.rho0 is not None:
            raise ValidationError(f"{self.strategy} sweeps take p and no rho0")
        PartialPolarizationParams(self.p, 0.0)

    @property
    def _p(self) -> float:
        if self.p is None:
            raise ValidationError(f"{self.strategy} sweeps have no degree of polarization")
        return self.p

    @property
    def _rho0(self) -> Rho0Params:
        if self.rho0 is None:
            raise ValidationError(f"{self.strategy} sweeps have no rho0")
        return self.rho0

    @property
    def prepared_labels(self) -> tuple[str, str]:
        return PREPARED_LABELS[self.strategy]

    def network(self, angle_deg: float, prepared: str) -> Network:
        angle = math.radians(angle_deg)
        if self.strategy is SweepStrategy.USD:
            return build_usd_circuit(angle, 1 if prepared == "1" else 2, self._rho0)
        builder = build_mc_circuit if self.strategy is SweepStrategy.MC else build_minerror_circuit
        return builder(self._p, angle, "+" if prepared == "+" else "-")

    def analytic(self, angle_deg: float, prepared_index: int) -> tuple[float, float, float]:
        """(failure probability, confidence of the row's outcome, Helstrom error)."""
        angle = math.radians(angle_deg)
        if self.strategy is SweepStrategy.USD:
            report = usd_report(angle, self._rho0)
            confidence = report.predicted.get(("C1", "C2")[prepared_index], 0.0)
            return report.predicted["Q_opt"], confidence, report.predicted["P_E"]
        if self.strategy is SweepStrategy.MC:
            report = max_confidence_report(self._p, angle)
            return report.predicted["Q_opt"], report.predicted["C1"], report.predicted["P_E"]
        helstrom = helstrom_error(partially_polarized_problem(self._p, angle))
        return 0.0, minerror_confidence(self._p, angle), helstrom


@dataclass(frozen=True)
class SweepRow:
    """
    One angle and prepared state.

    error_rate is the share of wrong assertions: for usd the wrong-detector
    clicks over conclusive clicks of this batch, for mc/minerror one minus the
    confidence of the outcome asserting this row's state, pooled over both
    batches. ci_low/ci_high bracket error_rate; both are None when undefined.
    """

    strategy: str
    angle_deg: float
    prepared: str
    n_trials: int
    n_apd0: int
    n_apd0p: int
    n_apd1: int
    n_apd2: int
    frac_inconclusive: float
    frac_apd1: float
    frac_apd2: float
    error_rate: float | None
    ci_low: float | None
    ci_high: float | None
    analytic_q: float
    analytic_c: float
    analytic_helstrom: float

    def as_csv_fields(self) -> dict[str, str]:
        return {f.name: _format_field(getattr(self, f.name)) for f in fields(self)}


def _format_field(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    rows: tuple[SweepRow, ...]

    def to_rows(self) -> list[dict[str, str]]:
        """Rows keyed by CSV_COLUMNS with deterministic text formatting."""
        return [row.as_csv_fields() for row in self.rows]


def _trial_count(config: SweepConfig, index: int) -> int:
    if not config.poisson:
        return config.n_trials
    rng = np.random.default_rng(derive_seed(config.seed, index, 2))
    return max(int(rng.poisson(config.count_rate * config.dwell_s)), 1)


def _wrong_assertions(
    config: SweepConfig, batches: tuple[TrialBatch, TrialBatch], index: int
) -> Estimate | None:
    try:
        if config.strategy is SweepStrategy.USD:
            return error_rate(batches[index], index)
        outcome = (Detector.APD1, Detector.APD2)[index]
        confidence = estimate_confidence(batches[0], batches[1], outcome)
        return proportion(confidence.total - confidence.successes, confidence.total)
    except UndefinedConfidenceError:
        return None


def _sweep_point(config: SweepConfig, index: int, angle_deg: float) -> list[SweepRow]:
    n = _trial_count(config, index)
    batches = tuple(
        sample_imperfect(
            config.network(angle_deg, prepared),
            config.imperfection,
            n,
            derive_seed(config.seed, index, j),
            prepared=prepared,
            jitter_draws=config.jitter_draws,
        )
        for j, prepared in enumerate(config.prepared_labels)
    )
    rows = []
    for j, batch in enumerate(batches):
        wrong = _wrong_assertions(config, batches, j)
        q, c, helstrom = config.analytic(angle_deg, j)
        rows.append(
            SweepRow(
                strategy=config.strategy.value,
                angle_deg=angle_deg,
                prepared=batch.prepared,
                n_trials=batch.n_trials,
                n_apd0=batch.count(Detector.APD0),
                n_apd0p=batch.count(Detector.APD0P),
                n_apd1=batch.count(Detector.APD1),
                n_apd2=batch.count(Detector.APD2),
                frac_inconclusive=batch.fraction(Detector.APD0, Detector.APD0P),
                frac_apd1=batch.fraction(Detector.APD1),
                frac_apd2=batch.fraction(Detector.APD2),
                error_rate=None if wrong is None else wrong.value,
                ci_low=None if wrong is None else wrong.ci_low,
                ci_high=None if wrong is None else wrong.ci_high,
                analytic_q=q,
                analytic_c=c,
                analytic_helstrom=helstrom,
            )
        )
    logger.debug("Sweep point %d at %.3f deg done (%d trials per state)", index, angle_deg, n)
    return rows


async def run_sweep_async(config: SweepConfig) -> SweepResult:
    """Run sweep points on up to config.workers threads; rows follow the angle grid."""
    semaphore = asyncio.Semaphore(config.workers)

    async def run_point(index: int, angle_deg: float) -> list[SweepRow]:
        async with semaphore:
            return await asyncio.to_thread(_sweep_point, config, index, angle_deg)

    points = await asyncio.gather(
        *[run_point(index, angle) for index, angle in enumerate(config.angles_deg)]
    )
    return SweepResult(config, tuple(row for rows in points for row in rows))


def run_sweep(config: SweepConfig) -> SweepResult:
    logger.info(
        "Starting %s sweep over %d angle(s), seed %d, %d worker(s)",
        config.strategy,
        len(config.angles_deg),
        config.seed,
        config.workers,
    )
    result = asyncio.run(run_sweep_async(config))
    logger.info("Finished %s sweep: %d rows", config.strategy, len(result.rows))
    return result


def row_deviations(row: SweepRow) -> dict[str, float]:
    """
    Distance of each empirical fraction from its ideal prediction in Wilson sigmas.

    Predictions: inconclusive share analytic_q, conclusive shares split by
    analytic_c, and a wrong-assertion share of 1 - analytic_c.
    """
    first = row.prepared in ("+", "1")
    right = row.analytic_c if first else 1.0 - row.analytic_c
    conclusive = 1.0 - row.analytic_q
    predicted = {
        "frac_inconclusive": (row.n_apd0 + row.n_apd0p, row.analytic_q),
        "frac_apd1": (row.n_apd1, conclusive * right),
        "frac_apd2": (row.n_apd2, conclusive * (1.0 - right)),
    }
    deviations = {
        name: _sigmas(proportion(count, row.n_trials), expected)
        for name, (count, expected) in predicted.items()
    }
    if row.error_rate is not None and row.ci_low is not None and row.ci_high is not None:
        estimate = Estimate(row.error_rate, row.ci_low, row.ci_high, 0, 0)
        deviations["error_rate"] = _sigmas(estimate, 1.0 - row.analytic_c)
    return deviations


def _sigmas(estimate: Estimate, expected: float) -> float:
    sigma = estimate.sigma
    gap = abs(estimate.value - expected)
    if sigma == 0.0:
        return 0.0 if gap == 0.0 else math.inf
    return gap / sigma


def max_sigma_deviation(result: SweepResult) -> float:
    """Largest row_deviations value over the whole sweep."""
    return max(max(row_deviations(row).values()) for row in result.rows)
