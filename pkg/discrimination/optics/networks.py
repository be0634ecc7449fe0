"""
Discrimination Networks
=======================

Builders for the three bench networks:

- the maximum-confidence network for rho_+/rho_- on a single path: a filter
  interferometer (HWP3 sets the H transmission, HWP4 turns V by pi/2) whose
  failure port feeds APD0, followed by +/-45 degree analysis (HWP5 at pi/4)
  onto APD1/APD2;
- the same network at theta3 = pi/2, which has no inconclusive branch and
  realizes the minimum-error measurement;
- the unambiguous network for rho_1/rho_2: one filter interferometer per path
  (failures on APD0/APD0'), analysis plates HWP5 (pi/4) and HWP5' (-pi/4)
  and a final PBS merging both paths onto APD1/APD2.

Each builder returns the circuit together with the state entering it. The
preparation plates (HWP1, HWP2 and their primed twins) sit in the circuit's
preparation stage, so the measurement stage alone carries the POVM.
"""

from __future__ import annotations

import math
from typing import Literal, Mapping

from ..errors import DegenerateFilterError, ValidationError
from ..quantum import DensityOperator, Detector, Outcome
from ..states import (
    PartialPolarizationParams,
    Rho0Params,
    Sign,
    check_half_angle,
    make_rho0,
    make_source_state,
)
from ..strategies import theta3_mc
from .circuit import OpticalCircuit, transmit
from .elements import HalfWavePlate, OpticalElement, PhotonDetector, PolarizingBeamSplitter

Network = tuple[OpticalCircuit, DensityOperator]
MixedPairLabel = Literal[1, 2]

# Abstract outcome of the qubit strategies -> detector of the single-path network
MC_DETECTORS: Mapping[str, str] = {
    Outcome.INCONCLUSIVE: Detector.APD0,
    Outcome.STATE1: Detector.APD1,
    Outcome.STATE2: Detector.APD2,
}

MC_PLATES = ("HWP1", "HWP2", "HWP3", "HWP4", "HWP5")
USD_PLATES = (
    "HWP1",
    "HWP1'",
    "HWP2",
    "HWP2'",
    "HWP3",
    "HWP3'",
    "HWP4",
    "HWP4'",
    "HWP5",
    "HWP5'",
)

_MC_PATHS = ("in", "vac", "u", "l", "inc", "m", "vac2", "d1", "d2")


def _filter_interferometer(
    suffix: str, path: str, theta3: float, failure_label: str, tag: str = ""
) -> list[OpticalElement]:
    """
    Split H/V, tilt H by theta3 and turn V by pi/2, then recombine.

    The cos(theta3) share of H leaves on inc{tag} towards the failure
    detector; the rest continues on m{tag} with H and V exchanged
    (H -> V weighted by sin theta3, V -> -H).
    """
    upper, lower, inconclusive, merged = (f"{name}{tag}" for name in ("u", "l", "inc", "m"))
    return [
        PolarizingBeamSplitter(f"PBS2{suffix}", path, f"vac{tag}", upper, lower),
        HalfWavePlate(f"HWP3{suffix}", upper, theta3),
        HalfWavePlate(f"HWP4{suffix}", lower, math.pi / 2),
        PolarizingBeamSplitter(f"PBS3{suffix}", upper, lower, inconclusive, merged),
        PhotonDetector(failure_label, inconclusive, failure_label),
    ]


def _qubit_preparation(beta: float, prepared: Sign) -> tuple[OpticalElement, ...]:
    plates: list[OpticalElement] = [HalfWavePlate("HWP1", "in", beta)]
    if prepared == "-":
        plates.append(HalfWavePlate("HWP2", "in", -2 * beta))
    elif prepared != "+":
        raise ValidationError(f"prepared state must be '+' or '-', got {prepared!r}")
    return tuple(plates)


def _filter_network(beta: float, prepared: Sign, theta3: float) -> OpticalCircuit:
    elements = [
        *_filter_interferometer("", "in", theta3, Detector.APD0),
        HalfWavePlate("HWP5", "m", math.pi / 4),
        PolarizingBeamSplitter("PBS4", "m", "vac2", "d1", "d2"),
        PhotonDetector(Detector.APD1, "d1", Detector.APD1),
        PhotonDetector(Detector.APD2, "d2", Detector.APD2),
    ]
    return OpticalCircuit(
        paths=_MC_PATHS,
        input_paths=("in",),
        preparation=_qubit_preparation(beta, prepared),
        elements=tuple(elements),
    )


def build_mc_circuit(p: float, beta: float, prepared: Sign) -> Network:
    """
    Maximum-confidence network for rho_+ or rho_-.

    The input is the source photon p|H><H| + (1-p)I/2; HWP1 (beta) and, for
    rho_-, HWP2 (-2 beta) prepare the state to be discriminated.
    """
    PartialPolarizationParams(p, beta)
    circuit = _filter_network(beta, prepared, theta3_mc(p, beta))
    return circuit, make_source_state(p)


def build_minerror_circuit(p: float, beta: float, prepared: Sign) -> Network:
    """Projective +/-45 degree measurement: the filter network with theta3 = pi/2."""
    PartialPolarizationParams(p, beta)
    circuit = _filter_network(beta, prepared, math.pi / 2)
    return circuit, make_source_state(p)


def _usd_preparation(alpha: float, prepared: MixedPairLabel) -> tuple[OpticalElement, ...]:
    plates: list[OpticalElement] = [
        HalfWavePlate("HWP1", "1", alpha),
        HalfWavePlate("HWP1'", "2", alpha - math.pi / 2),
    ]
    if prepared == 2:
        plates += [HalfWavePlate("HWP2", "1", -2 * alpha), HalfWavePlate("HWP2'", "2", -2 * alpha)]
    elif prepared != 1:
        raise ValidationError(f"prepared state must be 1 or 2, got {prepared!r}")
    return tuple(plates)


def build_usd_circuit(alpha: float, prepared: MixedPairLabel, rho0: Rho0Params) -> Network:
    """
    Unambiguous network for rho_1 or rho_2.

    The input is rho_0 on paths 1 and 2. HWP3/HWP3' transmit tan(alpha) of
    the H amplitude (theta3 = arcsin tan alpha), so the failure ports see
    cos(2 alpha) for every rho_0. HWP5' is set opposite to HWP5; after the
    merging PBS both paths' rho_1 clicks land on APD1 and rho_2 clicks on APD2.

    Raises:
        DegenerateFilterError: for alpha = 0
    """
    check_half_angle("alpha", alpha)
    if alpha == 0.0:
        raise DegenerateFilterError("alpha = 0 gives a filter that always fails (Q = 1)")
    theta3 = math.asin(min(math.tan(alpha), 1.0))
    elements = [
        *_filter_interferometer("", "1", theta3, Detector.APD0, tag="1"),
        *_filter_interferometer("'", "2", theta3, Detector.APD0P, tag="2"),
        HalfWavePlate("HWP5", "m1", math.pi / 4),
        HalfWavePlate("HWP5'", "m2", -math.pi / 4),
        PolarizingBeamSplitter("PBS4", "m1", "m2", "o1", "o2"),
        PhotonDetector(Detector.APD1, "o1", Detector.APD1),
        PhotonDetector(Detector.APD2, "o2", Detector.APD2),
    ]
    paths = (
        "1",
        "2",
        *(f"{name}{tag}" for tag in ("1", "2") for name in ("vac", "u", "l", "inc", "m")),
        "o1",
        "o2",
    )
    circuit = OpticalCircuit(
        paths=paths,
        input_paths=("1", "2"),
        preparation=_usd_preparation(alpha, prepared),
        elements=tuple(elements),
    )
    return circuit, make_rho0(rho0)


def build_source_circuit() -> OpticalCircuit:
    """PBS1: the source photon's H goes to path 1 and its V to path 2."""
    return OpticalCircuit(
        paths=("src", "vac", "1", "2"),
        input_paths=("src",),
        elements=(PolarizingBeamSplitter("PBS1", "src", "vac", "1", "2"),),
    )


def source_rho0(p: float, gamma: float) -> DensityOperator:
    """
    Two-path state behind PBS1 for the source p|psi_gamma><psi_gamma| + (1-p)I/2.

    Equals make_rho0(rho0_from_input_polarization(p, gamma)).
    """
    source = make_source_state(p)
    prepared = OpticalCircuit(
        paths=("src",),
        input_paths=("src",),
        elements=(HalfWavePlate("HWP0", "src", gamma),),
    )
    rotated = transmit(prepared, source, ("src",))
    return transmit(build_source_circuit(), rotated, ("1", "2"))


def perturb_plates(
    circuit: OpticalCircuit,
    offsets: Mapping[str, float] | None = None,
    jitter: Mapping[str, float] | None = None,
) -> OpticalCircuit:
    """Add static offsets and per-trial jitter (radians, by element name) to plate angles."""
    offsets = offsets or {}
    jitter = jitter or {}
    return circuit.with_plate_angles(
        lambda plate: plate.theta + offsets.get(plate.name, 0.0) + jitter.get(plate.name, 0.0)
    )


def plate_names(circuit: OpticalCircuit) -> tuple[str, ...]:
    return tuple(e.name for e in circuit.all_elements() if isinstance(e, HalfWavePlate))
