"""Open-system simulation and pulse optimization of Rydberg-atom
CNOT/Toffoli gates."""

__version__ = "0.1.0"

from .fidelity import CNOT, TOFFOLI, Scenario, TargetGate, gate_fidelity, optimization_error
from .ga import GAConfig, GAResult, SearchSpace, fitness_of, make_objective, optimize
from .model import GateSystem, collapse_operators, hamiltonian
from .noise import (AmplitudeNoise, DopplerNoise, NoiseModel, NoiseRealization,
                    PositionNoise, average_fidelity, decay_scan, doppler_sigma)
from .propagator import PropagationConfig, PropagationError, propagate, propagate_pure
from .pulses import PulseSet, PulseWaveform, mhz_to_angular
from .qops import DensityMatrix, basis_index, embed_single_atom, expectation

__all__ = [
    "CNOT", "TOFFOLI", "Scenario", "TargetGate", "gate_fidelity", "optimization_error",
    "GAConfig", "GAResult", "SearchSpace", "fitness_of", "make_objective", "optimize",
    "GateSystem", "collapse_operators", "hamiltonian",
    "AmplitudeNoise", "DopplerNoise", "NoiseModel", "NoiseRealization",
    "PositionNoise", "average_fidelity", "decay_scan", "doppler_sigma",
    "PropagationConfig", "PropagationError", "propagate", "propagate_pure",
    "PulseSet", "PulseWaveform", "mhz_to_angular",
    "DensityMatrix", "basis_index", "embed_single_atom", "expectation",
]
