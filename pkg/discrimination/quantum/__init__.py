"""Validated quantum states, measurements and the small linear algebra behind them."""

from .base import (
    TOL,
    ClickDistribution,
    ComplexMatrix,
    DensityOperator,
    Detector,
    DiscriminationProblem,
    KrausSet,
    Outcome,
    Povm,
    PureState,
    UnitaryOperator,
    dagger,
)
from .linalg import eig_hermitian, overlap, rotation, trace_norm
from .measurement import born_probabilities

__all__ = [
    "TOL",
    "ClickDistribution",
    "ComplexMatrix",
    "DensityOperator",
    "Detector",
    "DiscriminationProblem",
    "KrausSet",
    "Outcome",
    "Povm",
    "PureState",
    "UnitaryOperator",
    "born_probabilities",
    "dagger",
    "eig_hermitian",
    "overlap",
    "rotation",
    "trace_norm",
]
