"""Gate-fidelity metrics for CNOT (2 atoms) and Toffoli (3 atoms).

Both gates are permutations of the computational basis: CNOT swaps
|10> <-> |11|, Toffoli swaps |110> <-> |111>.  The fidelity averages, over
all computational basis inputs |b>, the population of the ideal output
U|b> in the evolved state (metric "population"), or the square root of
that population (metric "uhlmann").  Leakage out of the computational
subspace penalizes the fidelity directly; nothing is renormalized.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from .model import GateSystem
from .propagator import PropagationConfig, propagate_states
from .pulses import PulseSet
from .qops import basis_index, computational_kets, dim_for

if TYPE_CHECKING:
    from .noise import NoiseRealization

METRIC_MODES = ("population", "uhlmann")


@dataclass(frozen=True)
class TargetGate:
    kind: str  # "CNOT" | "Toffoli"

    def __post_init__(self):
        if self.kind not in ("CNOT", "Toffoli"):
            raise ValueError(f"unknown gate kind {self.kind!r}")

    @property
    def n_atoms(self) -> int:
        return 2 if self.kind == "CNOT" else 3

    def apply(self, levels: tuple[int, ...]) -> tuple[int, ...]:
        """Image of a computational basis ket under the ideal gate."""
        if len(levels) != self.n_atoms:
            raise ValueError(f"{self.kind} acts on {self.n_atoms} atoms")
        if all(lv == 1 for lv in levels[:-1]):
            return levels[:-1] + (1 - levels[-1],)
        return levels

    def matrix(self) -> np.ndarray:
        """Permutation matrix on the full 3^n space (identity on leakage)."""
        dim = dim_for(self.n_atoms)
        u = np.eye(dim)
        for ket in computational_kets(self.n_atoms):
            out = self.apply(ket)
            u[basis_index(ket), basis_index(ket)] = 0.0
            u[basis_index(out), basis_index(ket)] = 1.0
        return u


CNOT = TargetGate("CNOT")
TOFFOLI = TargetGate("Toffoli")


def gate_fidelity(sys: GateSystem, pulses: PulseSet,
                  cfg: PropagationConfig | None = None,
                  noise: "NoiseRealization | None" = None,
                  gate: TargetGate = CNOT,
                  metric_mode: str = "population") -> float:
    """Average fidelity over the 2^n computational basis inputs."""
    if metric_mode not in METRIC_MODES:
        raise ValueError(f"metric_mode must be one of {METRIC_MODES}")
    if gate.n_atoms != sys.n_atoms:
        raise ValueError(f"{gate.kind} gate needs a {gate.n_atoms}-atom system")
    kets = computational_kets(sys.n_atoms)
    dim = sys.dim
    rho = np.zeros((len(kets), dim, dim), dtype=complex)
    for b, ket in enumerate(kets):
        rho[b, basis_index(ket), basis_index(ket)] = 1.0
    rho, _, _ = propagate_states(sys, pulses, rho, cfg, noise)
    total = 0.0
    for b, ket in enumerate(kets):
        out = basis_index(gate.apply(ket))
        overlap = max(rho[b, out, out].real, 0.0)
        total += np.sqrt(overlap) if metric_mode == "uhlmann" else overlap
    return total / len(kets)


def optimization_error(f: float) -> float:
    """Infidelity of a decay-free run, 1 - F."""
    return 1.0 - f


@dataclass
class Scenario:
    """A fixed gate setting: system, pulse set, integration and metric."""

    system: GateSystem
    pulses: PulseSet
    gate: TargetGate
    cfg: PropagationConfig = field(default_factory=PropagationConfig)
    metric_mode: str = "population"

    def fidelity(self, noise: "NoiseRealization | None" = None) -> float:
        return gate_fidelity(self.system, self.pulses, self.cfg, noise,
                             self.gate, self.metric_mode)

    def with_pulses(self, pulses: PulseSet) -> "Scenario":
        return Scenario(self.system, pulses, self.gate, self.cfg, self.metric_mode)

    def with_gamma(self, gamma: float) -> "Scenario":
        return Scenario(self.system.with_gamma(gamma), self.pulses, self.gate,
                        self.cfg, self.metric_mode)
