"""Optimum discrimination of mixed polarization states and its optical realization."""

from .errors import (
    CircuitError,
    DegenerateFilterError,
    DiscriminationError,
    InvalidPovmError,
    UndefinedConfidenceError,
    ValidationError,
)
from .states import MixedPairParams, PartialPolarizationParams, Rho0Params
from .strategies import Strategy, StrategyReport

__all__ = [
    "CircuitError",
    "DegenerateFilterError",
    "DiscriminationError",
    "InvalidPovmError",
    "MixedPairParams",
    "PartialPolarizationParams",
    "Rho0Params",
    "Strategy",
    "StrategyReport",
    "UndefinedConfidenceError",
    "ValidationError",
]
