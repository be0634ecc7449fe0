"""Point estimates with Wilson score intervals from sampled clicks."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.stats import norm

from ..errors import UndefinedConfidenceError, ValidationError
from ..quantum import Detector
from ..strategies import TARGET_STATE
from .sampling import TrialBatch

WILSON_LEVEL = 0.95


@dataclass(frozen=True)
class Estimate:
    """Binomial proportion with its Wilson interval."""

    value: float
    ci_low: float
    ci_high: float
    successes: int
    total: int

    @property
    def sigma(self) -> float:
        """Standard error implied by the interval width."""
        return (self.ci_high - self.ci_low) / (2 * wilson_z())


def wilson_z(level: float = WILSON_LEVEL) -> float:
    return float(norm.ppf(0.5 + level / 2))


def wilson_interval(successes: int, total: int, level: float = WILSON_LEVEL) -> tuple[float, float]:
    """
    Wilson score interval for successes out of total.

    Raises:
        ValidationError: if total < 1 or successes is outside [0, total]
    """
    if total < 1:
        raise ValidationError(f"Wilson interval needs at least one trial, got {total!r}")
    if not 0 <= successes <= total:
        raise ValidationError(f"successes {successes!r} outside [0, {total}]")
    z = wilson_z(level)
    phat = successes / total
    z2n = z * z / total
    center = (phat + z2n / 2) / (1 + z2n)
    half = z * math.sqrt(phat * (1 - phat) / total + z2n / (4 * total)) / (1 + z2n)
    return max(min(center - half, phat), 0.0), min(max(center + half, phat), 1.0)


def proportion(successes: int, total: int) -> Estimate:
    low, high = wilson_interval(successes, total)
    return Estimate(successes / total, low, high, successes, total)


def estimate_confidence(batch1: TrialBatch, batch2: TrialBatch, outcome_label: str) -> Estimate:
    """
    Fraction of clicks on outcome_label that came from the state it asserts.

    batch1 and batch2 hold equally many trials of state 1 and state 2, so
    pooling their counts weighs the states with equal priors.

    Raises:
        ValidationError: on unequal trial counts or a label asserting no state
        UndefinedConfidenceError: if the outcome never clicked
    """
    if batch1.n_trials != batch2.n_trials:
        raise ValidationError(
            f"batches must have equal trial counts, got {batch1.n_trials} and {batch2.n_trials}"
        )
    if outcome_label not in TARGET_STATE:
        raise ValidationError(f"outcome {outcome_label!r} does not assert a state")
    counts = (batch1.count(outcome_label), batch2.count(outcome_label))
    total = sum(counts)
    if total == 0:
        raise UndefinedConfidenceError(f"no clicks on {outcome_label!r}; confidence undefined")
    return proportion(counts[TARGET_STATE[outcome_label]], total)


def error_rate(batch: TrialBatch, prepared: int) -> Estimate:
    """
    Clicks on the wrong conclusive detector over all conclusive clicks.

    Args:
        batch: Trials of one prepared state
        prepared: Index of that state (0 for state 1, 1 for state 2)

    Raises:
        UndefinedConfidenceError: if the batch has no conclusive clicks
    """
    if prepared not in (0, 1):
        raise ValidationError(f"prepared state index must be 0 or 1, got {prepared!r}")
    wrong = batch.count(Detector.APD2 if prepared == 0 else Detector.APD1)
    conclusive = batch.count(Detector.APD1) + batch.count(Detector.APD2)
    if conclusive == 0:
        raise UndefinedConfidenceError("no conclusive clicks; error rate undefined")
    return proportion(wrong, conclusive)
