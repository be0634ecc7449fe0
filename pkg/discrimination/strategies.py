"""
Optimum Discrimination Strategies
=================================

Closed-form figures of merit and explicit measurements for:

- minimum-error discrimination (Helstrom bound, projective measurement);
- optimum maximum-confidence discrimination of rho_+/rho_-;
- optimum unambiguous discrimination of rho_1/rho_2.

Each closed form is paired with a measurement so the two can be checked
against each other through the Born rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from typing import Mapping

import numpy as np

from .errors import DegenerateFilterError, UndefinedConfidenceError, ValidationError
from .quantum import (
    TOL,
    ComplexMatrix,
    Detector,
    DiscriminationProblem,
    KrausSet,
    Outcome,
    Povm,
    PureState,
    dagger,
    eig_hermitian,
    overlap,
    trace_norm,
)
from .states import (
    H1,
    H2,
    MixedPairParams,
    PartialPolarizationParams,
    Rho0Params,
    check_half_angle,
    make_mixed_pair,
    make_partially_polarized,
)

# Which state an outcome label asserts
TARGET_STATE: Mapping[str, int] = {
    Outcome.STATE1: 0,
    Outcome.STATE2: 1,
    Detector.APD1: 0,
    Detector.APD2: 1,
}

_DIAGONAL = np.array([1.0, 1.0], dtype=np.complex128) / math.sqrt(2)
_ANTIDIAGONAL = np.array([1.0, -1.0], dtype=np.complex128) / math.sqrt(2)


class Strategy(StrEnum):
    MIN_ERROR = "MinError"
    MAX_CONFIDENCE = "MaxConfidence"
    UNAMBIGUOUS = "UnambiguousUSD"


@dataclass(frozen=True)
class StrategyReport:
    """A strategy's measurement and its predicted figures of merit."""

    strategy: Strategy
    povm: Povm
    predicted: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name, value in self.predicted.items():
            if not -TOL.psd <= value <= 1.0 + TOL.psd:
                raise ValidationError(f"predicted {name} = {value!r} is not a probability")


# ---------------------------------------------------------------------------
# Minimum error
# ---------------------------------------------------------------------------


def helstrom_error(problem: DiscriminationProblem) -> float:
    """P_E = (1 - ||eta1 rho1 - eta2 rho2||_1) / 2."""
    value = 0.5 * (1.0 - trace_norm(problem.weighted_difference()))
    return min(max(value, 0.0), 0.5)


def minerror_povm(problem: DiscriminationProblem) -> Povm:
    """
    Projective Helstrom measurement.

    State1 projects onto the non-negative eigenspace of eta1 rho1 - eta2 rho2;
    zero eigenvalues go to State1, so identical states give State1 = I.
    """
    values, vectors = eig_hermitian(problem.weighted_difference())
    kept = vectors[:, values >= -TOL.psd]
    projector = kept @ dagger(kept)
    projector = (projector + dagger(projector)) / 2
    identity = np.eye(problem.dim, dtype=np.complex128)
    return Povm(((Outcome.STATE1, projector), (Outcome.STATE2, identity - projector)))


def minerror_confidence(p: float, beta: float) -> float:
    """C^E = (1 + p sin 2beta) / 2 for rho_+/rho_- under the Helstrom measurement."""
    PartialPolarizationParams(p, beta)
    return 0.5 * (1.0 + p * math.sin(2 * beta))


# ---------------------------------------------------------------------------
# Maximum confidence
# ---------------------------------------------------------------------------


def max_confidence(p: float, beta: float) -> float:
    """C_+ = C_- = 1/2 + p sin 2beta / (2 sqrt(1 - p^2 cos^2 2beta))."""
    PartialPolarizationParams(p, beta)
    sin2b = math.sin(2 * beta)
    if sin2b == 0.0:
        return 0.5
    radicand = 1.0 - (p * math.cos(2 * beta)) ** 2
    return min(0.5 + p * sin2b / (2 * math.sqrt(radicand)), 1.0)


def mc_failure_prob(p: float, beta: float) -> float:
    """Minimum inconclusive probability Q = p cos 2beta."""
    PartialPolarizationParams(p, beta)
    # beta may overshoot pi/4 by the angle tolerance
    return max(p * math.cos(2 * beta), 0.0)


def theta3_mc(p: float, beta: float) -> float:
    """Filter plate angle arccos sqrt(2 p cos 2beta / (1 + p cos 2beta))."""
    q = mc_failure_prob(p, beta)
    return math.acos(min(math.sqrt(2 * q / (1 + q)), 1.0))


def _filter_kraus(transmission: float) -> list[tuple[str, ComplexMatrix]]:
    """
    Qubit filter diag(transmission, 1) followed by the +/-45 degree analysis.

    Branch labels are the abstract outcomes; the filtered-out H amplitude is
    the inconclusive branch.
    """
    filt = np.diag([transmission, 1.0]).astype(np.complex128)
    loss = math.sqrt(max(1.0 - transmission**2, 0.0))
    return [
        (Outcome.INCONCLUSIVE, np.diag([loss, 0.0]).astype(np.complex128)),
        (Outcome.STATE1, np.outer(_DIAGONAL, _DIAGONAL.conj()) @ filt),
        (Outcome.STATE2, np.outer(_ANTIDIAGONAL, _ANTIDIAGONAL.conj()) @ filt),
    ]


def mc_kraus(p: float, beta: float) -> KrausSet:
    """Kraus branches of the maximum-confidence filter measurement."""
    q = mc_failure_prob(p, beta)
    transmission = math.sqrt((1.0 - q) / (1.0 + q))
    return KrausSet(tuple(_filter_kraus(transmission)))


def mc_povm(p: float, beta: float) -> Povm:
    """
    Maximum-confidence measurement on the (H, V) qubit.

    With s = sin(theta3): Pi_inc = diag(cos^2 theta3, 0),
    Pi_1 = [[s^2, s], [s, 1]]/2 and Pi_2 = [[s^2, -s], [-s, 1]]/2.
    """
    return mc_kraus(p, beta).to_povm()


# ---------------------------------------------------------------------------
# Unambiguous discrimination
# ---------------------------------------------------------------------------


def pure_usd_failure(first: PureState, second: PureState) -> float:
    """Minimum failure probability |<psi1|psi2>| for equally likely pure states."""
    return abs(overlap(first, second))


def usd_failure_prob(alpha: float) -> float:
    """Q = cos 2alpha, independent of rho_0."""
    check_half_angle("alpha", alpha)
    return max(math.cos(2 * alpha), 0.0)


def _embed_block(block: ComplexMatrix, offset: int) -> ComplexMatrix:
    matrix = np.zeros((4, 4), dtype=np.complex128)
    matrix[offset : offset + 2, offset : offset + 2] = block
    return matrix


_USD_LABELS = {
    H1: {
        Outcome.INCONCLUSIVE: Detector.APD0,
        Outcome.STATE1: Detector.APD1,
        Outcome.STATE2: Detector.APD2,
    },
    H2: {
        Outcome.INCONCLUSIVE: Detector.APD0P,
        Outcome.STATE1: Detector.APD1,
        Outcome.STATE2: Detector.APD2,
    },
}


def usd_kraus(alpha: float) -> KrausSet:
    """
    Per-path filter diag(tan alpha, 1) with +/-45 degree analysis on both paths.

    Failures of path 1 and path 2 go to APD0 and APD0'; the '+' outcomes of
    both paths go to APD1 and the '-' outcomes to APD2.
    """
    check_half_angle("alpha", alpha)
    if alpha == 0.0:
        raise DegenerateFilterError("alpha = 0 gives a filter that always fails (Q = 1)")
    transmission = min(math.tan(alpha), 1.0)
    branches = [
        (_USD_LABELS[offset][label], _embed_block(kraus, offset))
        for offset in (H1, H2)
        for label, kraus in _filter_kraus(transmission)
    ]
    # Failure branches first so the POVM reads APD0, APD0', APD1, APD2
    branches.sort(key=lambda branch: branch[0] not in (Detector.APD0, Detector.APD0P))
    return KrausSet(tuple(branches))


def usd_povm(alpha: float) -> Povm:
    """Optimum unambiguous measurement for rho_1/rho_2 at half angle alpha."""
    return usd_kraus(alpha).to_povm()


# ---------------------------------------------------------------------------
# Confidence and reports
# ---------------------------------------------------------------------------


def confidence_of(
    povm: Povm,
    outcome_label: str,
    problem: DiscriminationProblem,
    state_index: int | None = None,
) -> float:
    """
    Conditional probability that the asserted state was prepared given the outcome.

    Args:
        povm: Measurement
        outcome_label: Outcome whose confidence is wanted
        problem: States and priors
        state_index: State asserted by the outcome; looked up from the label
            when omitted (State1/APD1 -> 0, State2/APD2 -> 1)

    Raises:
        UndefinedConfidenceError: if the outcome has zero probability
    """
    element = povm.element(outcome_label)
    if state_index is None:
        if outcome_label not in TARGET_STATE:
            raise ValidationError(f"outcome {outcome_label!r} does not assert a state")
        state_index = TARGET_STATE[outcome_label]
    joint = [eta * rho.expectation(element) for eta, rho in zip(problem.priors, problem.states)]
    total = sum(joint)
    if total <= TOL.psd:
        raise UndefinedConfidenceError(
            f"outcome {outcome_label!r} has probability {total:.3e}; confidence undefined"
        )
    return joint[state_index] / total


def partially_polarized_problem(p: float, beta: float) -> DiscriminationProblem:
    params = PartialPolarizationParams(p, beta)
    return DiscriminationProblem.equal_priors(
        make_partially_polarized(params, "+"), make_partially_polarized(params, "-")
    )


def mixed_pair_problem(alpha: float, rho0: Rho0Params) -> DiscriminationProblem:
    return DiscriminationProblem.equal_priors(*make_mixed_pair(MixedPairParams(alpha, rho0)))


def mixed_pair_helstrom(alpha: float, rho0: Rho0Params) -> float:
    """Reference error rate 1/2 - Tr|rho_1 - rho_2|/4 of the von Neumann measurement."""
    return helstrom_error(mixed_pair_problem(alpha, rho0))


def _conclusive_confidences(
    povm: Povm, problem: DiscriminationProblem, labels: tuple[str, str]
) -> dict[str, float]:
    confidences = {}
    for key, label in zip(("C1", "C2"), labels):
        try:
            confidences[key] = confidence_of(povm, label, problem)
        except UndefinedConfidenceError:
            continue
    return confidences


def minerror_report(problem: DiscriminationProblem) -> StrategyReport:
    povm = minerror_povm(problem)
    predicted = {"P_E": helstrom_error(problem), "Q_opt": 0.0}
    predicted.update(_conclusive_confidences(povm, problem, (Outcome.STATE1, Outcome.STATE2)))
    return StrategyReport(Strategy.MIN_ERROR, povm, predicted)


def max_confidence_report(p: float, beta: float) -> StrategyReport:
    problem = partially_polarized_problem(p, beta)
    povm = mc_povm(p, beta)
    predicted = {
        "Q_opt": mc_failure_prob(p, beta),
        "C1": max_confidence(p, beta),
        "C2": max_confidence(p, beta),
        "C_minerr": minerror_confidence(p, beta),
        "P_E": helstrom_error(problem),
    }
    return StrategyReport(Strategy.MAX_CONFIDENCE, povm, predicted)


def usd_report(alpha: float, rho0: Rho0Params) -> StrategyReport:
    problem = mixed_pair_problem(alpha, rho0)
    povm = usd_povm(alpha)
    predicted = {"Q_opt": usd_failure_prob(alpha), "P_E": helstrom_error(problem)}
    predicted.update(_conclusive_confidences(povm, problem, (Detector.APD1, Detector.APD2)))
    return StrategyReport(Strategy.UNAMBIGUOUS, povm, predicted)


def max_confidence_gap(p: float, step_deg: float = 0.1) -> tuple[float, float]:
    """
    Largest C - C^E over beta in [0, 45] degrees on a grid of step_deg.

    Returns:
        (beta in radians at the maximum, maximal gap)
    """
    if step_deg <= 0:
        raise ValidationError(f"step must be positive, got {step_deg!r}")
    count = int(round(45.0 / step_deg)) + 1
    betas = np.radians(np.linspace(0.0, 45.0, count))
    gaps = [max_confidence(p, float(b)) - minerror_confidence(p, float(b)) for b in betas]
    best = int(np.argmax(gaps))
    return float(betas[best]), float(gaps[best])
