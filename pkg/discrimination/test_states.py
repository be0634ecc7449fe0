"""
State Family Tests
==================

Run with: pytest discrimination/test_states.py -v
"""

import math

import numpy as np
import pytest
from scipy.linalg import block_diag

from discrimination.errors import ValidationError
from discrimination.quantum import DensityOperator, PureState, UnitaryOperator, rotation
from discrimination.states import (
    H1,
    H2,
    V1,
    V2,
    MixedPairParams,
    PartialPolarizationParams,
    Rho0Params,
    bloch_vector,
    embed_rho0_block,
    from_bloch_vector,
    make_mixed_pair,
    make_partially_polarized,
    make_rho0,
    make_source_state,
    make_u_pm,
    random_rho0,
    rho0_from_input_polarization,
)

BETA = math.radians(22.5)


class TestPartiallyPolarized:
    """Tests for rho_+/rho_-."""

    def test_pure_aligned_state(self) -> None:
        rho = make_partially_polarized(PartialPolarizationParams(1.0, 0.0), "+")
        assert np.allclose(rho.matrix, np.diag([1, 0]))

    @pytest.mark.parametrize("p", [0.1, 0.54, 1.0])
    def test_zero_separation_gives_identical_states(self, p: float) -> None:
        params = PartialPolarizationParams(p, 0.0)
        assert np.allclose(
            make_partially_polarized(params, "+").matrix,
            make_partially_polarized(params, "-").matrix,
        )

    def test_measured_polarization_example(self) -> None:
        rho = make_partially_polarized(PartialPolarizationParams(0.54, BETA), "+")
        expected = 0.5 * np.array([[1.381838, 0.381838], [0.381838, 0.618162]])
        assert np.allclose(rho.matrix, expected, atol=1e-6)

    def test_minus_state_flips_coherence(self) -> None:
        params = PartialPolarizationParams(0.54, BETA)
        plus = make_partially_polarized(params, "+").matrix
        minus = make_partially_polarized(params, "-").matrix
        assert minus[0, 1] == pytest.approx(-plus[0, 1])

    @pytest.mark.parametrize(
        "p,beta,description",
        [
            (0.0, 0.1, "p = 0"),
            (1.2, 0.1, "p above one"),
            (0.5, -0.1, "negative beta"),
            (0.5, math.pi / 3, "beta above pi/4"),
        ],
    )
    def test_rejects_out_of_range(self, p: float, beta: float, description: str) -> None:
        with pytest.raises(ValidationError):
            PartialPolarizationParams(p, beta)

    def test_bad_sign(self) -> None:
        with pytest.raises(ValidationError, match="sign"):
            make_partially_polarized(PartialPolarizationParams(0.5, 0.1), "*")  # type: ignore[arg-type]

    def test_source_state(self) -> None:
        assert np.allclose(make_source_state(0.54).matrix, np.diag([0.77, 0.23]))


class TestRho0:
    """Tests for the common state rho_0."""

    def test_population_on_path_one(self) -> None:
        rho = make_rho0(Rho0Params(1.0, 0.0))
        expected = np.zeros((4, 4))
        expected[H1, H1] = 1
        assert np.allclose(rho.matrix, expected)

    def test_maximal_coherence_is_pure(self) -> None:
        rho = make_rho0(Rho0Params(0.5, 0.5, 0.5))
        vector = np.zeros(4)
        vector[H1] = vector[V2] = 1 / math.sqrt(2)
        assert np.allclose(rho.matrix, np.outer(vector, vector))
        assert np.sum(rho.spectrum() > 1e-10) == 1

    def test_spectrum_from_block(self) -> None:
        params = Rho0Params(0.7, 0.3, 0.2)
        discriminant = math.sqrt(1 - 4 * (0.7 * 0.3 - 0.2**2))
        expected = [(1 + discriminant) / 2, (1 - discriminant) / 2, 0, 0]
        assert np.allclose(make_rho0(params).spectrum(), expected, atol=1e-10)
        assert np.allclose(embed_rho0_block(params), [[0.7, 0.2], [0.2, 0.3]])

    def test_two_zero_eigenvalues(self) -> None:
        rng = np.random.default_rng(5)
        for _ in range(50):
            spectrum = make_rho0(random_rho0(rng)).spectrum()
            assert np.sum(np.abs(spectrum) < 1e-10) >= 2

    @pytest.mark.parametrize(
        "r11,r22,r12,description",
        [
            (0.6, 0.6, 0.0, "populations above one"),
            (1.2, -0.2, 0.0, "negative population"),
            (0.5, 0.5, 0.6, "coherence too large"),
        ],
    )
    def test_rejects_invalid(self, r11: float, r22: float, r12: complex, description: str) -> None:
        with pytest.raises(ValidationError):
            Rho0Params(r11, r22, r12)


class TestRho0FromInputPolarization:
    """Tests for rho_0 produced by PBS1."""

    @pytest.mark.parametrize(
        "p,gamma_deg,expected",
        [
            (1.0, 0.0, (1.0, 0.0, 0.0)),
            (0.54, 45.0, (0.5, 0.5, 0.27)),
        ],
    )
    def test_examples(self, p: float, gamma_deg: float, expected: tuple[float, float, float]) -> None:
        params = rho0_from_input_polarization(p, math.radians(gamma_deg))
        assert (params.r11, params.r22, params.r12.real) == pytest.approx(expected, abs=1e-12)

    def test_cauchy_schwarz_over_grid(self) -> None:
        for p in np.linspace(0.05, 1.0, 20):
            for gamma in np.linspace(0, math.pi, 20):
                params = rho0_from_input_polarization(float(p), float(gamma))
                assert abs(params.r12) ** 2 <= params.r11 * params.r22 + 1e-12


class TestUnitaries:
    """Tests for U^(+/-)."""

    def test_zero_angle(self) -> None:
        unitary = make_u_pm(0.0, "+")
        h1, v2 = PureState.basis(4, H1), PureState.basis(4, V2)
        assert np.allclose(unitary.apply(h1).amplitudes, h1.amplitudes)
        assert np.allclose(unitary.apply(v2).amplitudes, PureState.basis(4, H2).amplitudes)

    def test_thirty_degrees(self) -> None:
        unitary = make_u_pm(math.radians(30), "+")
        image = unitary.apply(PureState.basis(4, H1)).amplitudes
        assert image[H1] == pytest.approx(math.sqrt(3) / 2)
        assert image[V1] == pytest.approx(0.5)

    def test_maps_v2_onto_s_state(self) -> None:
        alpha = math.radians(20)
        image = make_u_pm(alpha, "-").apply(PureState.basis(4, V2)).amplitudes
        assert np.allclose(image, [0, 0, math.cos(alpha), -math.sin(alpha)])

    def test_unitary_for_random_angles(self) -> None:
        rng = np.random.default_rng(6)
        for alpha in rng.uniform(0, math.pi / 4, size=50):
            for sign in ("+", "-"):
                matrix = make_u_pm(float(alpha), sign).matrix
                assert np.allclose(matrix.conj().T @ matrix, np.eye(4), atol=1e-12)


class TestMixedPair:
    """Tests for rho_1/rho_2."""

    def test_zero_angle_gives_identical_states(self) -> None:
        rho1, rho2 = make_mixed_pair(MixedPairParams(0.0, Rho0Params(0.6, 0.4, 0.1)))
        assert np.allclose(rho1.matrix, rho2.matrix)

    def test_spectrum_is_preserved(self) -> None:
        rng = np.random.default_rng(7)
        for _ in range(20):
            rho0 = random_rho0(rng)
            rho1, rho2 = make_mixed_pair(MixedPairParams(math.radians(17), rho0))
            assert np.allclose(rho1.spectrum(), make_rho0(rho0).spectrum(), atol=1e-10)
            assert np.allclose(rho2.spectrum(), make_rho0(rho0).spectrum(), atol=1e-10)

    def test_orthogonal_at_maximal_angle(self) -> None:
        rho1, rho2 = make_mixed_pair(MixedPairParams(math.pi / 4, Rho0Params(1.0, 0.0)))
        d_plus = np.zeros(4)
        d_plus[H1] = d_plus[V1] = 1 / math.sqrt(2)
        assert np.allclose(rho1.matrix, np.outer(d_plus, d_plus))
        assert abs(np.trace(rho1.matrix @ rho2.matrix)) < 1e-10

    def test_orthogonal_at_maximal_angle_for_pure_rho0(self) -> None:
        rho0 = Rho0Params(0.3, 0.7, math.sqrt(0.21))
        rho1, rho2 = make_mixed_pair(MixedPairParams(math.pi / 4, rho0))
        assert abs(np.trace(rho1.matrix @ rho2.matrix)) < 1e-10

    def test_independent_of_unitary_completion(self) -> None:
        """Test that a reflection completion of each block yields the same pair."""
        alpha = math.radians(25)
        rho0 = make_rho0(Rho0Params(0.6, 0.4, 0.2 + 0.1j))
        for sign, factor in (("+", 1), ("-", -1)):
            reflection = np.diag([1, -1])
            other = UnitaryOperator(
                block_diag(
                    rotation(factor * alpha) @ reflection,
                    rotation(factor * alpha - math.pi / 2) @ np.diag([-1, 1]),
                )
            )
            canonical = make_u_pm(alpha, sign)
            assert np.allclose(
                other.conjugate(rho0).matrix, canonical.conjugate(rho0).matrix, atol=1e-12
            )


class TestBlochVector:
    """Tests for the Bloch representation."""

    @pytest.mark.parametrize(
        "matrix,expected",
        [
            (np.eye(2) / 2, (0.0, 0.0, 0.0)),
            (np.diag([1, 0]), (0.0, 0.0, 1.0)),
        ],
    )
    def test_examples(self, matrix: np.ndarray, expected: tuple[float, float, float]) -> None:
        assert bloch_vector(DensityOperator(matrix)) == pytest.approx(expected)

    def test_partially_polarized_example(self) -> None:
        rho = make_partially_polarized(PartialPolarizationParams(0.54, BETA), "+")
        assert bloch_vector(rho) == pytest.approx((0.381838, 0.0, 0.381838), abs=1e-6)

    def test_length_equals_degree_of_polarization(self) -> None:
        for p in np.linspace(0.05, 1.0, 20):
            for beta in np.linspace(0, math.pi / 4, 20):
                for sign in ("+", "-"):
                    rho = make_partially_polarized(PartialPolarizationParams(float(p), float(beta)), sign)
                    assert np.linalg.norm(bloch_vector(rho)) == pytest.approx(p, abs=1e-10)

    def test_inverse(self) -> None:
        rho = from_bloch_vector(0.3, -0.2, 0.5)
        assert bloch_vector(rho) == pytest.approx((0.3, -0.2, 0.5))

    def test_rejects_two_path_state(self) -> None:
        with pytest.raises(ValidationError):
            bloch_vector(DensityOperator.maximally_mixed(4))
