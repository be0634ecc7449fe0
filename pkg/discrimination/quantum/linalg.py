"""Hermitian eigendecomposition and the norms built on it."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..errors import ValidationError
from .base import TOL, ComplexMatrix, PureState, as_matrix, hermitian_asymmetry


def eig_hermitian(matrix: ArrayLike) -> tuple[NDArray[np.float64], ComplexMatrix]:
    """
    Diagonalize a Hermitian matrix of dimension 2 or 4.

    Args:
        matrix: Hermitian matrix, asymmetry at most the construction tolerance

    Returns:
        (eigenvalues, eigenvectors) with eigenvalues real and descending and
        the matching orthonormal eigenvectors as columns

    Raises:
        ValidationError: if the input is not Hermitian; the message names the
            largest entry of |A - A^dagger|
    """
    matrix = as_matrix(matrix, name="Hermitian matrix")
    asymmetry = hermitian_asymmetry(matrix)
    if asymmetry > TOL.construction:
        raise ValidationError(f"matrix is not Hermitian (max asymmetry {asymmetry:.3e})")
    values, vectors = np.linalg.eigh(matrix)
    return values[::-1].copy(), vectors[:, ::-1].copy()


def trace_norm(matrix: ArrayLike) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    values, _ = eig_hermitian(matrix)
    return float(np.sum(np.abs(values)))


def overlap(first: PureState, second: PureState) -> complex:
    """Inner product <first|second>, first argument conjugated."""
    if first.dim != second.dim:
        raise ValidationError(f"cannot overlap states of dims {first.dim} and {second.dim}")
    return complex(np.vdot(first.amplitudes, second.amplitudes))


def rotation(theta: float) -> ComplexMatrix:
    """Real rotation [[cos, -sin], [sin, cos]] on the (H, V) polarization basis."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)
