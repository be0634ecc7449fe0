"""
Optical Circuits
================

An ordered list of elements acting on a register of (path, polarization)
modes. A photon enters on the circuit's input paths, passes the preparation
stage and then the measurement stage; every detector absorbs the population
of its path. Propagation is single-photon: the state is a density operator on
the full mode register.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, replace
from typing import Any, Callable

import numpy as np
from numpy.typing import NDArray

from ..errors import CircuitError, ValidationError
from ..quantum import TOL, ClickDistribution, ComplexMatrix, DensityOperator, Povm, dagger
from ..quantum.measurement import clamp_probability
from .elements import (
    HalfWavePlate,
    ModeRegister,
    OpticalElement,
    PhotonDetector,
    element_from_dict,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OpticalCircuit:
    """
    Single-photon linear-optics network.

    Attributes:
        paths: Declared path ids; the mode basis is paths x (H, V)
        input_paths: Paths the input density operator lives on, in order
        elements: Measurement stage
        preparation: Elements applied before the measurement stage
    """

    paths: tuple[str, ...]
    input_paths: tuple[str, ...]
    elements: tuple[OpticalElement, ...]
    preparation: tuple[OpticalElement, ...] = field(default=())

    def __post_init__(self) -> None:
        for name in ("paths", "input_paths", "elements", "preparation"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if len(set(self.paths)) != len(self.paths):
            raise CircuitError(f"path ids must be unique, got {self.paths}")
        undeclared = [path for path in self.input_paths if path not in self.paths]
        if not self.input_paths or undeclared:
            raise CircuitError(f"input paths {self.input_paths} must be declared paths")
        if len(self.input_paths) not in (1, 2):
            raise CircuitError(f"circuits take 1 or 2 input paths, got {len(self.input_paths)}")
        self._check_elements()

    def _check_elements(self) -> None:
        names: set[str] = set()
        labels: set[str] = set()
        absorbed: dict[str, str] = {}
        for stage, elements in (("preparation", self.preparation), ("measurement", self.elements)):
            for element in elements:
                if element.name in names:
                    raise CircuitError(f"duplicate element name {element.name!r}")
                names.add(element.name)
                for path in element.paths():
                    if path not in self.paths:
                        raise CircuitError(f"{element.name}: path {path!r} is not declared")
                    if path in absorbed:
                        raise CircuitError(
                            f"{element.name} uses path {path!r} after detector {absorbed[path]}"
                        )
                if isinstance(element, PhotonDetector):
                    if stage == "preparation":
                        raise CircuitError(f"detector {element.name} placed in the preparation stage")
                    if element.label in labels:
                        raise CircuitError(f"detector label {element.label!r} is not unique")
                    labels.add(element.label)
                    absorbed[element.path] = element.name

    @property
    def register(self) -> ModeRegister:
        return ModeRegister(self.paths)

    @property
    def input_dim(self) -> int:
        return 2 * len(self.input_paths)

    @property
    def detector_labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.elements if isinstance(e, PhotonDetector))

    def all_elements(self) -> tuple[OpticalElement, ...]:
        return self.preparation + self.elements

    def element(self, name: str) -> OpticalElement:
        for element in self.all_elements():
            if element.name == name:
                return element
        raise CircuitError(f"circuit has no element {name!r}")

    def measurement_only(self) -> "OpticalCircuit":
        """Same circuit without its preparation stage."""
        return replace(self, preparation=())

    def with_plate_angles(self, angle: Callable[[HalfWavePlate], float]) -> "OpticalCircuit":
        """Copy with every half-wave plate's angle replaced by angle(plate)."""

        def remap(elements: tuple[OpticalElement, ...]) -> tuple[OpticalElement, ...]:
            return tuple(
                replace(e, theta=float(angle(e))) if isinstance(e, HalfWavePlate) else e
                for e in elements
            )

        return replace(self, preparation=remap(self.preparation), elements=remap(self.elements))

    def to_dict(self) -> dict[str, Any]:
        return {
            "paths": list(self.paths),
            "input_paths": list(self.input_paths),
            "preparation": [e.to_dict() for e in self.preparation],
            "elements": [e.to_dict() for e in self.elements],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "OpticalCircuit":
        try:
            return cls(
                paths=tuple(data["paths"]),
                input_paths=tuple(data["input_paths"]),
                preparation=tuple(element_from_dict(e) for e in data.get("preparation", [])),
                elements=tuple(element_from_dict(e) for e in data["elements"]),
            )
        except (KeyError, TypeError) as e:
            raise CircuitError(f"malformed circuit description: {e}") from e

    @classmethod
    def from_json(cls, text: str) -> "OpticalCircuit":
        return cls.from_dict(json.loads(text))


def _embed_inputs(circuit: OpticalCircuit, inputs: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """Place a stack of input-register matrices onto the full mode register."""
    register = circuit.register
    modes = [m for path in circuit.input_paths for m in register.modes(path)]
    states = np.zeros((inputs.shape[0], register.size, register.size), dtype=np.complex128)
    states[np.ix_(np.arange(inputs.shape[0]), modes, modes)] = inputs
    return states


def _run(
    circuit: OpticalCircuit, inputs: NDArray[np.complex128]
) -> tuple[dict[str, NDArray[np.complex128]], NDArray[np.complex128]]:
    """
    Propagate a stack of input matrices.

    Returns:
        (detected value per label, leftover trace) with one entry per input
    """
    register = circuit.register
    states = _embed_inputs(circuit, inputs)
    detected: dict[str, NDArray[np.complex128]] = {}
    for element in circuit.all_elements():
        if isinstance(element, PhotonDetector):
            h, v = register.modes(element.path)
            detected[element.label] = states[:, h, h] + states[:, v, v]
            states[:, [h, v], :] = 0
            states[:, :, [h, v]] = 0
            logger.debug("Detector %s absorbed path %s", element.label, element.path)
            continue
        unitary = element.operator(register)
        states = unitary @ states @ dagger(unitary)
    leftover = np.trace(states, axis1=1, axis2=2)
    return detected, leftover


def _check_input(circuit: OpticalCircuit, rho_in: DensityOperator) -> None:
    if rho_in.dim != circuit.input_dim:
        raise ValidationError(
            f"input state of dim {rho_in.dim} does not fit {len(circuit.input_paths)} input path(s)"
        )


def transmit(
    circuit: OpticalCircuit, rho_in: DensityOperator, output_paths: tuple[str, ...]
) -> DensityOperator:
    """
    State left on output_paths after every element has acted.

    Raises:
        CircuitError: if the circuit detects anything or population remains
            outside output_paths
    """
    _check_input(circuit, rho_in)
    if circuit.detector_labels:
        raise CircuitError("transmit needs a circuit without detectors")
    register = circuit.register
    states = _embed_inputs(circuit, rho_in.matrix[np.newaxis])
    for element in circuit.all_elements():
        unitary = element.operator(register)
        states = unitary @ states @ dagger(unitary)
    modes = [m for path in output_paths for m in register.modes(path)]
    reduced = states[0][np.ix_(modes, modes)]
    missing = 1.0 - float(np.trace(reduced).real)
    if abs(missing) > TOL.psd:
        raise CircuitError(f"population {missing:.3e} left the output paths {output_paths}")
    return DensityOperator(reduced)


def propagate(circuit: OpticalCircuit, rho_in: DensityOperator) -> ClickDistribution:
    """
    Send one photon in state rho_in through the circuit.

    Raises:
        ValidationError: if rho_in does not match the input register
        CircuitError: if population is left undetected
    """
    _check_input(circuit, rho_in)
    detected, leftover = _run(circuit, rho_in.matrix[np.newaxis])
    if abs(leftover[0]) > TOL.psd:
        raise CircuitError(f"population {abs(leftover[0]):.3e} never reached a detector")
    return ClickDistribution(
        {label: clamp_probability(float(values[0].real), label) for label, values in detected.items()}
    )


def circuit_to_povm(circuit: OpticalCircuit) -> Povm:
    """
    Effective measurement of the circuit on the prepared state.

    The preparation stage is left out. Propagates every matrix unit |i><j|
    of the input register; by linearity Tr(Pi_k |i><j|) = Pi_k[j, i] fixes
    each detector's POVM element.
    """
    circuit = circuit.measurement_only()
    dim = circuit.input_dim
    units = np.zeros((dim * dim, dim, dim), dtype=np.complex128)
    for i in range(dim):
        for j in range(dim):
            units[i * dim + j, i, j] = 1.0
    detected, leftover = _run(circuit, units)
    deviation = float(np.max(np.abs(leftover)))
    if deviation > TOL.psd:
        raise CircuitError(f"population {deviation:.3e} never reached a detector")
    elements: dict[str, ComplexMatrix] = {}
    for label, values in detected.items():
        element = values.reshape(dim, dim).T
        elements[label] = (element + dagger(element)) / 2
    return Povm.from_mapping(elements)
