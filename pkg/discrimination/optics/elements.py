"""Optical element definitions for the network simulator."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, ClassVar

import numpy as np

from ..errors import CircuitError
from ..quantum import ComplexMatrix, UnitaryOperator, rotation

# PBS on port modes (a.H, a.V, b.H, b.V) -> (out_a.H, out_a.V, out_b.H, out_b.V):
# H transmits, V crosses to the other output, real unit amplitudes.
_PBS_PERMUTATION = np.array(
    [
        [1, 0, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
    ],
    dtype=np.complex128,
)


def hwp_matrix(theta: float) -> UnitaryOperator:
    """Half-wave plate that turns linear polarization by theta (proper rotation)."""
    return UnitaryOperator(rotation(theta))


def pbs_matrix() -> UnitaryOperator:
    """PBS permutation on the four port modes (a.H, a.V, b.H, b.V)."""
    return UnitaryOperator(_PBS_PERMUTATION)


class ModeRegister:
    """Index of the (path, polarization) modes of a circuit."""

    def __init__(self, paths: tuple[str, ...]):
        self.paths = paths
        self._index = {path: 2 * i for i, path in enumerate(paths)}

    @property
    def size(self) -> int:
        return 2 * len(self.paths)

    def modes(self, path: str) -> tuple[int, int]:
        """(H index, V index) of a path."""
        try:
            base = self._index[path]
        except KeyError:
            raise CircuitError(f"path {path!r} is not declared; paths are {self.paths}") from None
        return base, base + 1


@dataclass(frozen=True)
class OpticalElement:
    """Base class for all optical elements."""

    kind: ClassVar[str] = "element"

    name: str

    def paths(self) -> tuple[str, ...]:
        raise NotImplementedError("Element subclasses must list the paths they touch")

    def operator(self, register: ModeRegister) -> ComplexMatrix:
        """Unitary on the full mode register."""
        raise NotImplementedError("Element subclasses must implement operator")

    def to_dict(self) -> dict[str, Any]:
        raise NotImplementedError("Element subclasses must implement to_dict")


@dataclass(frozen=True)
class HalfWavePlate(OpticalElement):
    """Turns the polarization on one path by theta radians."""

    kind: ClassVar[str] = "hwp"

    path: str
    theta: float

    def paths(self) -> tuple[str, ...]:
        return (self.path,)

    def operator(self, register: ModeRegister) -> ComplexMatrix:
        matrix = np.eye(register.size, dtype=np.complex128)
        modes = list(register.modes(self.path))
        matrix[np.ix_(modes, modes)] = hwp_matrix(self.theta).matrix
        return matrix

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "name": self.name, "path": self.path, "theta": self.theta}


@dataclass(frozen=True)
class PolarizingBeamSplitter(OpticalElement):
    """
    Transmits H from each input to the matching output and crosses V.

    Inputs and outputs are either the same two paths (in place) or four
    distinct paths; in the latter case the output modes' contents are routed
    back to the inputs so the element stays a permutation.
    """

    kind: ClassVar[str] = "pbs"

    in_a: str
    in_b: str
    out_a: str
    out_b: str

    def __post_init__(self) -> None:
        inputs, outputs = (self.in_a, self.in_b), (self.out_a, self.out_b)
        if self.in_a == self.in_b or self.out_a == self.out_b:
            raise CircuitError(f"{self.name}: ports must be distinct, got {inputs} -> {outputs}")
        if inputs != outputs and set(inputs) & set(outputs):
            raise CircuitError(
                f"{self.name}: outputs must equal the inputs or be disjoint, got {inputs} -> {outputs}"
            )

    def paths(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys((self.in_a, self.in_b, self.out_a, self.out_b)))

    def operator(self, register: ModeRegister) -> ComplexMatrix:
        matrix = np.eye(register.size, dtype=np.complex128)
        ins = [*register.modes(self.in_a), *register.modes(self.in_b)]
        outs = [*register.modes(self.out_a), *register.modes(self.out_b)]
        permutation = pbs_matrix().matrix
        if ins == outs:
            matrix[np.ix_(ins, ins)] = permutation
            return matrix
        matrix[ins, ins] = 0
        matrix[outs, outs] = 0
        matrix[np.ix_(outs, ins)] = permutation
        matrix[np.ix_(ins, outs)] = permutation.T
        return matrix

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "name": self.name,
            "in_a": self.in_a,
            "in_b": self.in_b,
            "out_a": self.out_a,
            "out_b": self.out_b,
        }


@dataclass(frozen=True)
class PhotonDetector(OpticalElement):
    """Absorbs both polarizations of a path and counts them under a label."""

    kind: ClassVar[str] = "detector"

    path: str
    label: str

    def paths(self) -> tuple[str, ...]:
        return (self.path,)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "name": self.name, "path": self.path, "label": self.label}


ELEMENT_KINDS: dict[str, type[OpticalElement]] = {
    cls.kind: cls for cls in (HalfWavePlate, PolarizingBeamSplitter, PhotonDetector)
}


def element_from_dict(data: dict[str, Any]) -> OpticalElement:
    fields = dict(data)
    kind = fields.pop("kind", None)
    if kind not in ELEMENT_KINDS:
        raise CircuitError(f"unknown element kind {kind!r}; expected one of {sorted(ELEMENT_KINDS)}")
    return ELEMENT_KINDS[kind](**fields)
