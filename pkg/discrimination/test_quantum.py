"""
Quantum Core Tests
==================

Tests for the validated state/measurement types, the Hermitian eigensolver
and the Born rule.
Run with: pytest discrimination/test_quantum.py -v
"""

import logging
import math

import numpy as np
import pytest

from discrimination.errors import InvalidPovmError, ValidationError
from discrimination.quantum import (
    ClickDistribution,
    DensityOperator,
    KrausSet,
    Povm,
    PureState,
    UnitaryOperator,
    born_probabilities,
    eig_hermitian,
    overlap,
    trace_norm,
)
from discrimination.quantum.measurement import clamp_probability
from discrimination.states import (
    PartialPolarizationParams,
    make_partially_polarized,
    r_state,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
H = PureState(np.array([1, 0]))
V = PureState(np.array([0, 1]))


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


def random_density(rng: np.random.Generator, dim: int) -> DensityOperator:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return DensityOperator(rho / np.trace(rho))


class TestDensityOperator:
    """Validation of density operators."""

    def test_accepts_maximally_mixed(self) -> None:
        rho = DensityOperator.maximally_mixed(4)
        assert rho.dim == 4
        assert np.allclose(rho.spectrum(), [0.25] * 4)

    @pytest.mark.parametrize(
        "matrix,description",
        [
            ([[0.5, 0], [0, 0.4]], "trace below one"),
            ([[0.5, 0.1], [0.2, 0.5]], "not Hermitian"),
            ([[1.2, 0], [0, -0.2]], "negative eigenvalue"),
            (np.eye(3) / 3, "dimension 3"),
            ([[np.nan, 0], [0, 1]], "non-finite entry"),
        ],
    )
    def test_rejects_invalid(self, matrix: list, description: str) -> None:
        """Test that non-physical matrices are rejected."""
        with pytest.raises(ValidationError):
            DensityOperator(np.array(matrix, dtype=np.complex128))

    def test_mix_with_maximally_mixed(self) -> None:
        pure = DensityOperator.from_pure(H)
        mixed = pure.mix(DensityOperator.maximally_mixed(2), 0.46)
        assert np.allclose(mixed.matrix, np.diag([0.77, 0.23]))

    def test_support_projector_of_rank_one(self) -> None:
        rho = DensityOperator.from_pure(H)
        assert np.allclose(rho.support_projector(), np.diag([1, 0]))

    def test_matrix_is_read_only(self) -> None:
        rho = DensityOperator.maximally_mixed(2)
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1.0


class TestEigHermitian:
    """Tests for the Hermitian eigendecomposition."""

    def test_diagonal_input(self) -> None:
        values, vectors = eig_hermitian(np.diag([0.3, 0.7]))
        assert np.allclose(values, [0.7, 0.3])
        assert np.allclose(np.abs(vectors), [[0, 1], [1, 0]])

    def test_pauli_x(self) -> None:
        values, vectors = eig_hermitian(SIGMA_X)
        assert np.allclose(values, [1, -1])
        assert abs(abs(vectors[0, 0]) - 1 / math.sqrt(2)) < 1e-12
        assert abs(abs(vectors[1, 1]) - 1 / math.sqrt(2)) < 1e-12

    @pytest.mark.parametrize("dim", [2, 4])
    def test_reconstruction(self, dim: int) -> None:
        """Test sum of lambda v v^dagger reproduces the input for random matrices."""
        rng = np.random.default_rng(1)
        for _ in range(1000):
            matrix = random_hermitian(rng, dim)
            values, vectors = eig_hermitian(matrix)
            rebuilt = vectors @ np.diag(values) @ vectors.conj().T
            assert np.max(np.abs(rebuilt - matrix)) < 1e-9
            assert np.all(np.diff(values) <= 0)

    def test_rejects_non_hermitian(self) -> None:
        with pytest.raises(ValidationError, match="asymmetry"):
            eig_hermitian(np.array([[0, 1], [0, 0]]))


class TestTraceNorm:
    """Tests for the trace norm."""

    @pytest.mark.parametrize(
        "matrix,expected",
        [
            (SIGMA_X, 2.0),
            (np.diag([0.3, -0.3]), 0.6),
        ],
    )
    def test_examples(self, matrix: np.ndarray, expected: float) -> None:
        assert trace_norm(matrix) == pytest.approx(expected, abs=1e-12)

    def test_difference_of_partially_polarized_pair(self) -> None:
        params = PartialPolarizationParams(0.54, math.radians(22.5))
        plus = make_partially_polarized(params, "+")
        minus = make_partially_polarized(params, "-")
        assert trace_norm(plus.matrix - minus.matrix) == pytest.approx(0.763676, abs=1e-6)

    def test_matches_characteristic_roots_in_dim_2(self) -> None:
        rng = np.random.default_rng(2)
        for _ in range(200):
            matrix = random_hermitian(rng, 2)
            trace = np.trace(matrix).real
            det = np.linalg.det(matrix).real
            roots = np.roots([1.0, -trace, det])
            assert trace_norm(matrix) == pytest.approx(float(np.sum(np.abs(roots))), abs=1e-9)


class TestOverlap:
    """Tests for pure-state inner products."""

    def test_basis_states(self) -> None:
        assert overlap(H, H) == pytest.approx(1.0)
        assert overlap(H, V) == pytest.approx(0.0)

    def test_rotated_pair(self) -> None:
        alpha = math.radians(20)
        value = overlap(r_state(alpha, "+"), r_state(alpha, "-"))
        assert value.real == pytest.approx(0.766044, abs=1e-6)

    def test_dimension_mismatch(self) -> None:
        with pytest.raises(ValidationError):
            overlap(H, r_state(0.1, "+"))

    def test_rejects_unnormalized_vector(self) -> None:
        with pytest.raises(ValidationError):
            PureState(np.array([1.0, 1.0]))


class TestPovm:
    """Tests for POVM validation and construction from Kraus operators."""

    def test_projective_measurement(self) -> None:
        povm = Povm.from_mapping({"H": np.diag([1, 0]), "V": np.diag([0, 1])})
        assert povm.labels == ("H", "V")
        assert povm.dim == 2
        assert len(povm) == 2

    @pytest.mark.parametrize(
        "elements,description",
        [
            ({"a": np.diag([1, 0]), "b": np.diag([0, 0.5])}, "incomplete"),
            ({"a": np.diag([1.5, 0.5]), "b": np.diag([-0.5, 0.5])}, "negative element"),
            ({"a": np.array([[0.5, 0.5], [0, 0.5]]), "b": np.array([[0.5, -0.5], [0, 0.5]])}, "non-Hermitian"),
        ],
    )
    def test_rejects_invalid(self, elements: dict, description: str) -> None:
        """Test that incomplete or non-positive POVMs raise InvalidPovmError."""
        with pytest.raises(InvalidPovmError):
            Povm.from_mapping(elements)

    def test_rejects_duplicate_labels(self) -> None:
        with pytest.raises(InvalidPovmError):
            Povm((("a", np.eye(2) / 2), ("a", np.eye(2) / 2)))

    def test_invalid_povm_is_a_validation_error(self) -> None:
        assert issubclass(InvalidPovmError, ValidationError)

    def test_relabel(self) -> None:
        povm = Povm.from_mapping({"H": np.diag([1, 0]), "V": np.diag([0, 1])})
        relabeled = povm.relabel({"H": "APD1"})
        assert relabeled.labels == ("APD1", "V")
        assert np.allclose(relabeled.element("APD1"), np.diag([1, 0]))

    def test_unknown_element(self) -> None:
        povm = Povm.from_mapping({"all": np.eye(2)})
        with pytest.raises(ValidationError, match="no outcome"):
            povm.element("missing")

    def test_kraus_branches_sharing_a_label_are_summed(self) -> None:
        kraus = KrausSet(
            (
                ("click", np.diag([1, 0]).astype(np.complex128)),
                ("other", np.array([[0, 0], [0, 1 / math.sqrt(2)]])),
                ("click", np.array([[0, 0], [0, 1 / math.sqrt(2)]])),
            )
        )
        povm = kraus.to_povm()
        assert povm.labels == ("click", "other")
        assert np.allclose(povm.element("click"), np.diag([1, 0.5]))

    def test_incomplete_kraus_set(self) -> None:
        with pytest.raises(InvalidPovmError):
            KrausSet((("a", np.diag([1, 0]).astype(np.complex128)),))


class TestUnitaryOperator:
    def test_rejects_non_unitary(self) -> None:
        with pytest.raises(ValidationError, match="unitary"):
            UnitaryOperator(np.diag([1, 2]))

    def test_conjugate_dimension_mismatch(self) -> None:
        with pytest.raises(ValidationError):
            UnitaryOperator(np.eye(4)).conjugate(DensityOperator.maximally_mixed(2))


class TestBornProbabilities:
    """Tests for the Born rule."""

    def test_projective_on_maximally_mixed(self) -> None:
        povm = Povm.from_mapping({"H": np.diag([1, 0]), "V": np.diag([0, 1])})
        probabilities = born_probabilities(povm, DensityOperator.maximally_mixed(2))
        assert probabilities["H"] == pytest.approx(0.5)
        assert probabilities["V"] == pytest.approx(0.5)

    def test_sums_to_one_on_random_states(self) -> None:
        rng = np.random.default_rng(3)
        povm = Povm.from_mapping(
            {"a": np.diag([0.2, 0.7, 0.1, 1.0]), "b": np.diag([0.8, 0.3, 0.9, 0.0])}
        )
        for _ in range(100):
            dist = born_probabilities(povm, random_density(rng, 4))
            assert sum(dist.probabilities.values()) == pytest.approx(1.0, abs=1e-10)

    def test_linear_in_the_state(self) -> None:
        rng = np.random.default_rng(4)
        povm = Povm.from_mapping({"a": np.array([[0.5, 0.5], [0.5, 0.5]]), "b": np.array([[0.5, -0.5], [-0.5, 0.5]])})
        first, second = random_density(rng, 2), random_density(rng, 2)
        weight = 0.3
        mixed = born_probabilities(povm, first.mix(second, weight)).as_array()
        separate = (1 - weight) * born_probabilities(povm, first).as_array() + weight * born_probabilities(
            povm, second
        ).as_array()
        assert np.allclose(mixed, separate, atol=1e-10)

    def test_dimension_mismatch(self) -> None:
        povm = Povm.from_mapping({"all": np.eye(4)})
        with pytest.raises(ValidationError):
            born_probabilities(povm, DensityOperator.maximally_mixed(2))


class TestClampProbability:
    """Tests for round-off handling of probabilities."""

    def test_tiny_negative_clamped_silently(self, caplog: pytest.LogCaptureFixture) -> None:
        with caplog.at_level(logging.WARNING):
            assert clamp_probability(-1e-13, "x") == 0.0
        assert not caplog.records

    def test_small_negative_clamped_with_warning(self, caplog: pytest.LogCaptureFixture) -> None:
        with caplog.at_level(logging.WARNING):
            assert clamp_probability(-1e-11, "x") == 0.0
        assert "Clamping" in caplog.text

    def test_large_negative_rejected(self) -> None:
        with pytest.raises(InvalidPovmError):
            clamp_probability(-1e-9, "x")


class TestClickDistribution:
    def test_rejects_bad_total(self) -> None:
        with pytest.raises(ValidationError):
            ClickDistribution({"a": 0.5, "b": 0.4})

    def test_relabel_and_array(self) -> None:
        dist = ClickDistribution({"State1": 0.25, "State2": 0.75}).relabel({"State1": "APD1"})
        assert dist.labels == ("APD1", "State2")
        assert np.allclose(dist.as_array(("State2", "APD1", "missing")), [0.75, 0.25, 0.0])
