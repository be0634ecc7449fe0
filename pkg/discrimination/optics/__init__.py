"""Single-photon simulation of the wave-plate / beam-splitter networks."""

from .circuit import OpticalCircuit, circuit_to_povm, propagate, transmit
from .elements import (
    HalfWavePlate,
    ModeRegister,
    OpticalElement,
    PhotonDetector,
    PolarizingBeamSplitter,
    hwp_matrix,
    pbs_matrix,
)
from .networks import (
    MC_DETECTORS,
    MC_PLATES,
    USD_PLATES,
    MixedPairLabel,
    Network,
    build_mc_circuit,
    build_minerror_circuit,
    build_source_circuit,
    build_usd_circuit,
    perturb_plates,
    plate_names,
    source_rho0,
)

__all__ = [
    "MC_DETECTORS",
    "MC_PLATES",
    "USD_PLATES",
    "HalfWavePlate",
    "MixedPairLabel",
    "ModeRegister",
    "Network",
    "OpticalCircuit",
    "OpticalElement",
    "PhotonDetector",
    "PolarizingBeamSplitter",
    "build_mc_circuit",
    "build_minerror_circuit",
    "build_source_circuit",
    "build_usd_circuit",
    "circuit_to_povm",
    "hwp_matrix",
    "pbs_matrix",
    "perturb_plates",
    "plate_names",
    "propagate",
    "source_rho0",
    "transmit",
]
