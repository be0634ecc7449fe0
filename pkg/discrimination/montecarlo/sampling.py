"""
Click Sampling
==============

Seeded multinomial sampling of detector clicks, with optional bench
imperfections: static plate offsets, Gaussian plate jitter and a partially
depolarized preparation.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from ..errors import ValidationError
from ..optics import Network, perturb_plates, plate_names, propagate
from ..quantum import ClickDistribution, DensityOperator

logger = logging.getLogger(__name__)

DEFAULT_TRIALS = 100_000
DEFAULT_JITTER_DRAWS = 500
# Source brightness (1/s) and g2(0) of the heralded source; metadata for Poisson mode
DEFAULT_COUNT_RATE = 2000.0
SOURCE_G2_ZERO = 0.35

Seed = int | np.random.SeedSequence | np.random.Generator


@dataclass(frozen=True)
class ImperfectionModel:
    """
    Bench imperfections, angles in radians.

    Attributes:
        hwp_static_offset: Fixed angle error per plate, by element name
        hwp_jitter_sigma: Standard deviation of a fresh Gaussian error on
            every plate
        prep_misalignment: Weight of the maximally mixed state replacing the
            prepared input
    """

    hwp_static_offset: Mapping[str, float] = field(default_factory=dict)
    hwp_jitter_sigma: float = 0.0
    prep_misalignment: float = 0.0

    def __post_init__(self) -> None:
        offsets = {str(name): float(value) for name, value in self.hwp_static_offset.items()}
        if not all(math.isfinite(value) for value in offsets.values()):
            raise ValidationError(f"plate offsets must be finite, got {offsets}")
        if not (math.isfinite(self.hwp_jitter_sigma) and self.hwp_jitter_sigma >= 0):
            raise ValidationError(f"jitter sigma must be >= 0, got {self.hwp_jitter_sigma!r}")
        if not 0.0 <= self.prep_misalignment < 1.0:
            raise ValidationError(
                f"preparation misalignment must lie in [0, 1), got {self.prep_misalignment!r}"
            )
        object.__setattr__(self, "hwp_static_offset", MappingProxyType(offsets))

    @classmethod
    def from_degrees(
        cls,
        offsets_deg: Mapping[str, float] | None = None,
        jitter_deg: float = 0.0,
        misalignment: float = 0.0,
    ) -> "ImperfectionModel":
        offsets = {name: math.radians(value) for name, value in (offsets_deg or {}).items()}
        return cls(offsets, math.radians(jitter_deg), misalignment)

    @property
    def is_ideal(self) -> bool:
        return (
            not any(self.hwp_static_offset.values())
            and self.hwp_jitter_sigma == 0.0
            and self.prep_misalignment == 0.0
        )


@dataclass(frozen=True)
class TrialBatch:
    """Detector counts of n_trials photons sent in the same prepared state."""

    prepared: str
    seed: int
    counts: Mapping[str, int]
    n_trials: int

    def __post_init__(self) -> None:
        counts = {str(label): int(value) for label, value in self.counts.items()}
        if any(value < 0 for value in counts.values()):
            raise ValidationError(f"counts must be non-negative, got {counts}")
        if sum(counts.values()) != self.n_trials:
            raise ValidationError(
                f"counts sum to {sum(counts.values())}, expected n_trials = {self.n_trials}"
            )
        object.__setattr__(self, "counts", MappingProxyType(counts))

    def count(self, label: str) -> int:
        return self.counts.get(label, 0)

    def fraction(self, *labels: str) -> float:
        return sum(self.count(label) for label in labels) / self.n_trials if self.n_trials else 0.0


def derive_seed(master: int, *key: int) -> int:
    """64-bit seed for one stream, split from the master seed by a counter key."""
    sequence = np.random.SeedSequence(master, spawn_key=tuple(key))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def _multinomial(rng: np.random.Generator, n: int, dist: ClickDistribution) -> np.ndarray:
    probabilities = dist.as_array()
    return rng.multinomial(n, probabilities / probabilities.sum())


def sample_clicks(dist: ClickDistribution, n: int, seed: int, prepared: str = "") -> TrialBatch:
    """
    Multinomial draw of n clicks from dist.

    Raises:
        ValidationError: if n < 1
    """
    if n < 1:
        raise ValidationError(f"number of trials must be at least 1, got {n!r}")
    counts = _multinomial(np.random.default_rng(seed), n, dist)
    return TrialBatch(prepared, seed, dict(zip(dist.labels, counts.tolist())), n)


def _misaligned(rho: DensityOperator, weight: float) -> DensityOperator:
    if weight == 0.0:
        return rho
    return rho.mix(DensityOperator.maximally_mixed(rho.dim), weight)


def perturbed_distribution(
    network: Network, imperfection: ImperfectionModel, seed: Seed
) -> ClickDistribution:
    """
    Click distribution of one realization of the imperfect bench.

    Every plate angle gets its static offset plus a fresh N(0, sigma) draw;
    the input state is mixed with the maximally mixed state of the input
    register by prep_misalignment.
    """
    circuit, rho_in = network
    rng = np.random.default_rng(seed)
    jitter: dict[str, float] = {}
    if imperfection.hwp_jitter_sigma > 0:
        names = plate_names(circuit)
        draws = rng.normal(0.0, imperfection.hwp_jitter_sigma, size=len(names))
        jitter = dict(zip(names, draws.tolist()))
    circuit = perturb_plates(circuit, imperfection.hwp_static_offset, jitter)
    return propagate(circuit, _misaligned(rho_in, imperfection.prep_misalignment))


def mean_perturbed_distribution(
    network: Network, imperfection: ImperfectionModel, draws: int, seed: Seed
) -> ClickDistribution:
    """Click distribution averaged over draws independent jitter realizations."""
    if draws < 1:
        raise ValidationError(f"number of jitter draws must be at least 1, got {draws!r}")
    rng = np.random.default_rng(seed)
    if imperfection.hwp_jitter_sigma == 0:
        draws = 1
    dists = [perturbed_distribution(network, imperfection, rng) for _ in range(draws)]
    mean = np.mean([dist.as_array() for dist in dists], axis=0)
    return ClickDistribution(dict(zip(dists[0].labels, mean.tolist())))


def sample_imperfect(
    network: Network,
    imperfection: ImperfectionModel,
    n: int,
    seed: int,
    prepared: str = "",
    jitter_draws: int = DEFAULT_JITTER_DRAWS,
) -> TrialBatch:
    """
    Clicks of n trials on the imperfect bench, jitter redrawn for every trial.

    Independent per-trial plate realizations make the clicks a single
    multinomial draw from the jitter-averaged distribution; jitter_draws
    realizations estimate that average.
    """
    if n < 1:
        raise ValidationError(f"number of trials must be at least 1, got {n!r}")
    rng = np.random.default_rng(seed)
    dist = mean_perturbed_distribution(network, imperfection, jitter_draws, rng)
    counts = _multinomial(rng, n, dist)
    logger.debug("Sampled %d trials for %r", n, prepared)
    return TrialBatch(prepared, seed, dict(zip(dist.labels, counts.tolist())), n)
