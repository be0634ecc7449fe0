"""
Quantum Core Types
==================

Validated, immutable carriers for the states and measurements used throughout
the package. Every operator lives on a 2-dimensional polarization space or on
the 4-dimensional path x polarization space ordered (H1, V1, H2, V2).
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..errors import InvalidPovmError, ValidationError

ComplexMatrix = NDArray[np.complex128]

ALLOWED_DIMS = (2, 4)


@dataclass(frozen=True)
class Tolerances:
    """Single source of truth for numerical slack."""

    # Hermiticity, trace and norm checks on freshly built objects
    construction: float = 1e-12
    # Negative eigenvalues / probabilities tolerated as round-off
    psd: float = 1e-10
    # Eigen-solver residuals and operator equality of derived measurements
    solver: float = 1e-9
    # Negative probabilities silently clamped to zero
    clamp: float = 1e-12


TOL = Tolerances()


class Outcome:
    """Abstract outcome labels of the discrimination strategies."""

    INCONCLUSIVE = "Inconclusive"
    STATE1 = "State1"
    STATE2 = "State2"


class Detector:
    """Detector labels of the optical networks."""

    APD0 = "APD0"
    APD0P = "APD0'"
    APD1 = "APD1"
    APD2 = "APD2"


def as_matrix(data: ArrayLike, *, name: str = "matrix") -> ComplexMatrix:
    """Convert to a read-only complex square matrix of an allowed dimension."""
    matrix = np.array(data, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {matrix.shape}")
    if matrix.shape[0] not in ALLOWED_DIMS:
        raise ValidationError(
            f"{name} must have dimension in {ALLOWED_DIMS}, got {matrix.shape[0]}"
        )
    if not np.all(np.isfinite(matrix)):
        raise ValidationError(f"{name} has non-finite entries")
    matrix.flags.writeable = False
    return matrix


def dagger(matrix: ArrayLike) -> ComplexMatrix:
    """Conjugate transpose."""
    return np.asarray(matrix).conj().T


def hermitian_asymmetry(matrix: ArrayLike) -> float:
    """Largest entry of |A - A^dagger|."""
    matrix = np.asarray(matrix)
    return float(np.max(np.abs(matrix - dagger(matrix))))


def min_eigenvalue(matrix: ArrayLike) -> float:
    return float(np.linalg.eigvalsh(np.asarray(matrix))[0])


@dataclass(frozen=True)
class PureState:
    """Unit vector in a 2- or 4-dimensional space."""

    amplitudes: NDArray[np.complex128]

    def __post_init__(self) -> None:
        vector = np.array(self.amplitudes, dtype=np.complex128)
        if vector.ndim != 1 or vector.shape[0] not in ALLOWED_DIMS:
            raise ValidationError(
                f"pure state must be a vector of length in {ALLOWED_DIMS}, "
                f"got shape {vector.shape}"
            )
        norm = float(np.linalg.norm(vector))
        if abs(norm - 1.0) > TOL.construction:
            raise ValidationError(f"pure state must have unit norm, got {norm!r}")
        vector.flags.writeable = False
        object.__setattr__(self, "amplitudes", vector)

    @classmethod
    def basis(cls, dim: int, index: int) -> "PureState":
        vector = np.zeros(dim, dtype=np.complex128)
        vector[index] = 1.0
        return cls(vector)

    @property
    def dim(self) -> int:
        return int(self.amplitudes.shape[0])

    def projector(self) -> ComplexMatrix:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class DensityOperator:
    """Trace-one positive Hermitian matrix."""

    matrix: ComplexMatrix

    def __post_init__(self) -> None:
        matrix = as_matrix(self.matrix, name="density operator")
        asymmetry = hermitian_asymmetry(matrix)
        if asymmetry > TOL.construction:
            raise ValidationError(
                f"density operator is not Hermitian (max asymmetry {asymmetry:.3e})"
            )
        trace = complex(np.trace(matrix))
        if abs(trace - 1.0) > TOL.construction:
            raise ValidationError(f"density operator must have trace 1, got {trace!r}")
        lowest = min_eigenvalue(matrix)
        if lowest < -TOL.psd:
            raise ValidationError(
                f"density operator is not positive (min eigenvalue {lowest:.3e})"
            )
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def from_pure(cls, state: PureState) -> "DensityOperator":
        return cls(state.projector())

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityOperator":
        return cls(np.eye(dim, dtype=np.complex128) / dim)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def mix(self, other: "DensityOperator", weight: float) -> "DensityOperator":
        """Return (1 - weight) * self + weight * other."""
        if not 0.0 <= weight <= 1.0:
            raise ValidationError(f"mixing weight must lie in [0, 1], got {weight!r}")
        if other.dim != self.dim:
            raise ValidationError(f"cannot mix dimensions {self.dim} and {other.dim}")
        return DensityOperator((1.0 - weight) * self.matrix + weight * other.matrix)

    def expectation(self, operator: ArrayLike) -> float:
        """Real part of Tr(rho A)."""
        return float(np.real(np.trace(self.matrix @ np.asarray(operator))))

    def spectrum(self) -> NDArray[np.float64]:
        """Eigenvalues in descending order."""
        return np.linalg.eigvalsh(self.matrix)[::-1]

    def support_projector(self) -> ComplexMatrix:
        values, vectors = np.linalg.eigh(self.matrix)
        kept = vectors[:, values > TOL.psd]
        return kept @ dagger(kept)


@dataclass(frozen=True)
class UnitaryOperator:
    """Matrix with U^dagger U = I."""

    matrix: ComplexMatrix

    def __post_init__(self) -> None:
        matrix = as_matrix(self.matrix, name="unitary")
        deviation = float(
            np.max(np.abs(dagger(matrix) @ matrix - np.eye(matrix.shape[0])))
        )
        if deviation > TOL.construction:
            raise ValidationError(f"operator is not unitary (deviation {deviation:.3e})")
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def apply(self, state: PureState) -> PureState:
        return PureState(self.matrix @ state.amplitudes)

    def conjugate(self, rho: DensityOperator) -> DensityOperator:
        """Return U rho U^dagger."""
        if rho.dim != self.dim:
            raise ValidationError(f"unitary of dim {self.dim} cannot act on dim {rho.dim}")
        return DensityOperator(self.matrix @ rho.matrix @ dagger(self.matrix))


def _labeled_matrices(
    pairs: Iterable[tuple[str, ArrayLike]], *, kind: str
) -> tuple[tuple[str, ComplexMatrix], ...]:
    converted = tuple(
        (str(label), as_matrix(matrix, name=f"{kind} {label!r}")) for label, matrix in pairs
    )
    if not converted:
        raise ValidationError(f"{kind} set must not be empty")
    dims = {matrix.shape[0] for _, matrix in converted}
    if len(dims) != 1:
        raise ValidationError(f"{kind} operators have mixed dimensions {sorted(dims)}")
    return converted


@dataclass(frozen=True)
class Povm:
    """Labeled positive operators summing to the identity."""

    outcomes: tuple[tuple[str, ComplexMatrix], ...]

    def __post_init__(self) -> None:
        outcomes = _labeled_matrices(self.outcomes, kind="POVM element")
        labels = [label for label, _ in outcomes]
        if len(set(labels)) != len(labels):
            raise InvalidPovmError(f"POVM labels must be unique, got {labels}")
        for label, element in outcomes:
            asymmetry = hermitian_asymmetry(element)
            if asymmetry > TOL.psd:
                raise InvalidPovmError(
                    f"POVM element {label!r} is not Hermitian (max asymmetry {asymmetry:.3e})"
                )
            lowest = min_eigenvalue(element)
            if lowest < -TOL.psd:
                raise InvalidPovmError(
                    f"POVM element {label!r} is not positive (min eigenvalue {lowest:.3e})"
                )
        total = sum(element for _, element in outcomes)
        deviation = float(np.max(np.abs(total - np.eye(total.shape[0]))))
        if deviation > TOL.psd:
            raise InvalidPovmError(f"POVM elements do not sum to identity (deviation {deviation:.3e})")
        object.__setattr__(self, "outcomes", outcomes)

    @classmethod
    def from_mapping(cls, elements: Mapping[str, ArrayLike]) -> "Povm":
        return cls(tuple(elements.items()))

    @property
    def dim(self) -> int:
        return int(self.outcomes[0][1].shape[0])

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.outcomes)

    def element(self, label: str) -> ComplexMatrix:
        for name, element in self.outcomes:
            if name == label:
                return element
        raise ValidationError(f"POVM has no outcome {label!r}; outcomes are {self.labels}")

    def relabel(self, mapping: Mapping[str, str]) -> "Povm":
        return Povm(tuple((mapping.get(label, label), element) for label, element in self.outcomes))

    def __iter__(self) -> Iterator[tuple[str, ComplexMatrix]]:
        return iter(self.outcomes)

    def __len__(self) -> int:
        return len(self.outcomes)


@dataclass(frozen=True)
class KrausSet:
    """Labeled measurement branches; several branches may share a label."""

    operators: tuple[tuple[str, ComplexMatrix], ...]

    def __post_init__(self) -> None:
        operators = _labeled_matrices(self.operators, kind="Kraus operator")
        total = sum(dagger(kraus) @ kraus for _, kraus in operators)
        deviation = float(np.max(np.abs(total - np.eye(total.shape[0]))))
        if deviation > TOL.psd:
            raise InvalidPovmError(f"Kraus operators are not complete (deviation {deviation:.3e})")
        object.__setattr__(self, "operators", operators)

    @property
    def dim(self) -> int:
        return int(self.operators[0][1].shape[0])

    def to_povm(self) -> Povm:
        """Sum K^dagger K per label, keeping first-seen label order."""
        elements: dict[str, ComplexMatrix] = {}
        for label, kraus in self.operators:
            effect = dagger(kraus) @ kraus
            elements[label] = elements[label] + effect if label in elements else effect
        return Povm.from_mapping(elements)


@dataclass(frozen=True)
class DiscriminationProblem:
    """Two states with their a priori probabilities."""

    states: tuple[DensityOperator, DensityOperator]
    priors: tuple[float, float] = (0.5, 0.5)

    def __post_init__(self) -> None:
        if len(self.states) != 2 or len(self.priors) != 2:
            raise ValidationError("a discrimination problem has exactly two states and two priors")
        first, second = self.priors
        if first < 0 or second < 0 or abs(first + second - 1.0) > TOL.construction:
            raise ValidationError(f"priors must be non-negative and sum to 1, got {self.priors}")
        if self.states[0].dim != self.states[1].dim:
            raise ValidationError(
                f"states have different dimensions {self.states[0].dim} and {self.states[1].dim}"
            )
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "priors", (float(first), float(second)))

    @classmethod
    def equal_priors(cls, rho1: DensityOperator, rho2: DensityOperator) -> "DiscriminationProblem":
        return cls((rho1, rho2), (0.5, 0.5))

    @property
    def dim(self) -> int:
        return self.states[0].dim

    def weighted_difference(self) -> ComplexMatrix:
        """eta1 rho1 - eta2 rho2."""
        (rho1, rho2), (eta1, eta2) = self.states, self.priors
        return eta1 * rho1.matrix - eta2 * rho2.matrix


@dataclass(frozen=True)
class ClickDistribution:
    """Probability per outcome or detector label."""

    probabilities: Mapping[str, float]

    def __post_init__(self) -> None:
        probabilities = {str(label): float(value) for label, value in self.probabilities.items()}
        if not probabilities:
            raise ValidationError("click distribution must not be empty")
        for label, value in probabilities.items():
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"probability of {label!r} outside [0, 1]: {value!r}")
        total = sum(probabilities.values())
        if abs(total - 1.0) > TOL.psd:
            raise ValidationError(f"click probabilities sum to {total!r}, expected 1")
        object.__setattr__(self, "probabilities", MappingProxyType(probabilities))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.probabilities)

    def __getitem__(self, label: str) -> float:
        return self.probabilities[label]

    def get(self, label: str, default: float = 0.0) -> float:
        return self.probabilities.get(label, default)

    def as_array(self, labels: tuple[str, ...] | None = None) -> NDArray[np.float64]:
        labels = self.labels if labels is None else labels
        return np.array([self.get(label) for label in labels], dtype=np.float64)

    def relabel(self, mapping: Mapping[str, str]) -> "ClickDistribution":
        return ClickDistribution(
            {mapping.get(label, label): value for label, value in self.probabilities.items()}
        )
