"""
State Families
==============

Constructors for the two state families being discriminated:

- the partially polarized qubit pair rho_+/rho_- (same degree of
  polarization p, pure components at +/- beta from horizontal);
- the rank-2 pair rho_1/rho_2 on the path x polarization space, obtained by
  rotating a common state rho_0 by +/- alpha in the two path subspaces.

The 4-dimensional basis is ordered (H1, V1, H2, V2): path-major,
polarization-minor. Angles are radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import block_diag

from .errors import ValidationError
from .quantum import TOL, DensityOperator, PureState, UnitaryOperator, rotation

Sign = Literal["+", "-"]

H1, V1, H2, V2 = range(4)

MAX_HALF_ANGLE = math.pi / 4


def _sign_factor(sign: str) -> int:
    if sign == "+":
        return 1
    if sign == "-":
        return -1
    raise ValidationError(f"sign must be '+' or '-', got {sign!r}")


def check_half_angle(name: str, angle: float) -> None:
    if not 0.0 <= angle <= MAX_HALF_ANGLE + TOL.construction:
        raise ValidationError(f"{name} must lie in [0, pi/4], got {angle!r}")


def _check_degree_of_polarization(p: float) -> None:
    if not 0.0 < p <= 1.0:
        raise ValidationError(f"degree of polarization p must lie in (0, 1], got {p!r}")


@dataclass(frozen=True)
class PartialPolarizationParams:
    """Degree of polarization p and half separation angle beta."""

    p: float
    beta: float

    def __post_init__(self) -> None:
        _check_degree_of_polarization(self.p)
        check_half_angle("beta", self.beta)


@dataclass(frozen=True)
class Rho0Params:
    """Populations of |H>_1 and |V>_2 and their coherence."""

    r11: float
    r22: float
    r12: complex = 0j

    def __post_init__(self) -> None:
        if self.r11 < 0 or self.r22 < 0:
            raise ValidationError(
                f"populations must be non-negative, got r11={self.r11!r}, r22={self.r22!r}"
            )
        if abs(self.r11 + self.r22 - 1.0) > TOL.construction:
            raise ValidationError(f"r11 + r22 must equal 1, got {self.r11 + self.r22!r}")
        if abs(self.r12) ** 2 > self.r11 * self.r22 + TOL.construction:
            raise ValidationError(
                f"|r12|^2 = {abs(self.r12) ** 2:.6g} exceeds r11*r22 = {self.r11 * self.r22:.6g}"
            )
        object.__setattr__(self, "r12", complex(self.r12))


@dataclass(frozen=True)
class MixedPairParams:
    """Half separation angle alpha of the rank-2 pair and the common rho_0."""

    alpha: float
    rho0: Rho0Params

    def __post_init__(self) -> None:
        check_half_angle("alpha", self.alpha)


def polarization_state(angle: float) -> PureState:
    """cos(angle)|H> + sin(angle)|V>."""
    return PureState(np.array([math.cos(angle), math.sin(angle)], dtype=np.complex128))


def psi_state(beta: float, sign: Sign) -> PureState:
    """|psi_+/-> = cos(beta)|H> +/- sin(beta)|V>."""
    return polarization_state(_sign_factor(sign) * beta)


def r_state(alpha: float, sign: Sign) -> PureState:
    """|r_+/-> = cos(alpha)|H>_1 +/- sin(alpha)|V>_1."""
    vector = np.zeros(4, dtype=np.complex128)
    vector[H1], vector[V1] = math.cos(alpha), _sign_factor(sign) * math.sin(alpha)
    return PureState(vector)


def s_state(alpha: float, sign: Sign) -> PureState:
    """|s_+/-> = cos(alpha)|H>_2 +/- sin(alpha)|V>_2."""
    vector = np.zeros(4, dtype=np.complex128)
    vector[H2], vector[V2] = math.cos(alpha), _sign_factor(sign) * math.sin(alpha)
    return PureState(vector)


def make_partially_polarized(params: PartialPolarizationParams, sign: Sign) -> DensityOperator:
    """rho_+/- = p |psi_+/-><psi_+/-| + (1 - p) I/2."""
    pure = psi_state(params.beta, sign).projector()
    return DensityOperator(params.p * pure + (1.0 - params.p) * np.eye(2) / 2)


def make_source_state(p: float) -> DensityOperator:
    """Partially polarized photon aligned with |H>, before any preparation plate."""
    return make_partially_polarized(PartialPolarizationParams(p, 0.0), "+")


def make_rho0(params: Rho0Params) -> DensityOperator:
    """
    rho_0 = r11 |H>_1<H| + r22 |V>_2<V| + (r12 |H>_1<V|_2 + h.c.).

    The operator has rank at most two; its only support is span{H1, V2}.
    """
    matrix = np.zeros((4, 4), dtype=np.complex128)
    matrix[H1, H1] = params.r11
    matrix[V2, V2] = params.r22
    matrix[H1, V2] = params.r12
    matrix[V2, H1] = params.r12.conjugate()
    return DensityOperator(matrix)


def rho0_from_input_polarization(p: float, gamma: float) -> Rho0Params:
    """
    Rho_0 produced when p|psi_gamma><psi_gamma| + (1-p)I/2 meets the first PBS.

    The PBS sends H to path 1 and V to path 2 without loss, so the source
    density matrix lands unchanged on the (H1, V2) block.
    """
    _check_degree_of_polarization(p)
    unpolarized = (1.0 - p) / 2
    c, s = math.cos(gamma), math.sin(gamma)
    r11 = p * c * c + unpolarized
    r22 = p * s * s + unpolarized
    # Renormalize the sum exactly; the parts differ from 1 only by round-off
    total = r11 + r22
    return Rho0Params(r11=r11 / total, r22=r22 / total, r12=complex(p * c * s / total))


def random_rho0(rng: np.random.Generator) -> Rho0Params:
    """Draw rho_0 with uniform populations and a uniformly scaled coherence."""
    r11 = float(rng.uniform(0.0, 1.0))
    r22 = 1.0 - r11
    magnitude = math.sqrt(r11 * r22) * float(rng.uniform(0.0, 1.0))
    phase = float(rng.uniform(0.0, 2 * math.pi))
    return Rho0Params(r11=r11, r22=r22, r12=magnitude * complex(math.cos(phase), math.sin(phase)))


def make_u_pm(alpha: float, sign: Sign) -> UnitaryOperator:
    """
    U^(+/-) as a direct sum of proper rotations on the two path subspaces.

    Block 1 maps |H>_1 to |r_+/->, block 2 maps |V>_2 to |s_+/->; each block
    is completed to the determinant +1 rotation with those images.
    """
    check_half_angle("alpha", alpha)
    factor = _sign_factor(sign)
    first = rotation(factor * alpha)
    second = rotation(factor * alpha - math.pi / 2)
    return UnitaryOperator(block_diag(first, second))


def make_mixed_pair(params: MixedPairParams) -> tuple[DensityOperator, DensityOperator]:
    """rho_1 = U^(+) rho_0 U^(+)dagger and rho_2 = U^(-) rho_0 U^(-)dagger."""
    rho0 = make_rho0(params.rho0)
    rho1 = make_u_pm(params.alpha, "+").conjugate(rho0)
    rho2 = make_u_pm(params.alpha, "-").conjugate(rho0)
    return rho1, rho2


def bloch_vector(rho: DensityOperator) -> tuple[float, float, float]:
    """(x, y, z) with rho = (I + x sx + y sy + z sz)/2; z = +1 is |H>."""
    if rho.dim != 2:
        raise ValidationError(f"Bloch vectors exist for qubits only, got dim {rho.dim}")
    m = rho.matrix
    return (
        float(2 * m[0, 1].real),
        float(-2 * m[0, 1].imag),
        float((m[0, 0] - m[1, 1]).real),
    )


def from_bloch_vector(x: float, y: float, z: float) -> DensityOperator:
    """Inverse of bloch_vector."""
    matrix: NDArray[np.complex128] = 0.5 * np.array(
        [[1 + z, x - 1j * y], [x + 1j * y, 1 - z]], dtype=np.complex128
    )
    return DensityOperator(matrix)


def embed_rho0_block(params: Rho0Params) -> NDArray[np.complex128]:
    """The 2x2 block of rho_0 on (H1, V2)."""
    return np.array(
        [[params.r11, params.r12], [params.r12.conjugate(), params.r22]], dtype=np.complex128
    )
