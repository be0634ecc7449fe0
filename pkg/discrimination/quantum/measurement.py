"""Born-rule outcome probabilities."""

from __future__ import annotations

import logging

from ..errors import InvalidPovmError, ValidationError
from .base import TOL, ClickDistribution, DensityOperator, Povm

logger = logging.getLogger(__name__)


def clamp_probability(value: float, label: str) -> float:
    """
    Map round-off negatives to zero and reject construction bugs.

    Values in [-clamp, 0) become 0 silently, values down to -psd become 0
    with a warning, anything lower raises InvalidPovmError.
    """
    if value < -TOL.psd:
        raise InvalidPovmError(f"negative probability {value:.3e} for outcome {label!r}")
    if value < -TOL.clamp:
        logger.warning("Clamping probability %.3e of outcome %r to zero", value, label)
    return min(max(value, 0.0), 1.0)


def born_probabilities(povm: Povm, rho: DensityOperator) -> ClickDistribution:
    """Return p_j = Tr(rho Pi_j) for every outcome, in POVM label order."""
    if povm.dim != rho.dim:
        raise ValidationError(f"POVM of dim {povm.dim} cannot measure a state of dim {rho.dim}")
    return ClickDistribution(
        {label: clamp_probability(rho.expectation(element), label) for label, element in povm}
    )
