"""Gate system definition: Hamiltonian assembly and collapse operators.

Internal units: time us, angular frequency rad/us, decay rates us^-1.
The vdWs coefficient C6 is stored in rad/us * um^6 so that V = C6 / r^6
comes out in rad/us directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .pulses import PulseSet, mhz_to_angular
from .qops import dim_for, basis_levels, embed_single_atom, level_op

# |70S_1/2; 70S_1/2> dispersion coefficient: C6/2pi = 863 GHz um^6.
C6_DEFAULT = mhz_to_angular(863e3)  # rad/us * um^6

# Rydberg decay rate in a cryogenic environment; 3.0 kHz as a plain rate.
GAMMA_DEFAULT = 3.0e-3  # us^-1

# Boltzmann constant and 87Rb mass for the Doppler model.
KB = 1.380649e-23      # J/K
MASS_RB87 = 1.44316e-25  # kg
K_EFF = 5.0e6          # m^-1, counterpropagating 480/780 nm two-photon pair


def gamma_from_khz(gamma_khz: float) -> float:
    """3.0 kHz -> 0.003 us^-1 (plain rate, not angular)."""
    return gamma_khz * 1e-3


def spacing_for(v0: float, c6: float = C6_DEFAULT) -> float:
    """Nominal separation r0 = (C6/V0)^(1/6) in um."""
    return (c6 / v0) ** (1.0 / 6.0)


@dataclass
class GateSystem:
    """Atom count, pairwise interactions and the Rydberg decay rate.

    Atom ordering: controls first, target last.  V is the symmetric pairwise
    interaction matrix in rad/us; for the 3-atom line the control-control
    entry is V0/2^6 and each control-target entry is V0.
    """

    n_atoms: int
    V: np.ndarray
    gamma: float
    c6: float = C6_DEFAULT
    r0: float | None = None

    def __post_init__(self):
        if self.n_atoms not in (2, 3):
            raise ValueError("only 2- and 3-atom systems are supported")
        self.V = np.asarray(self.V, dtype=float)
        if self.V.shape != (self.n_atoms, self.n_atoms):
            raise ValueError("interaction matrix shape must be (n, n)")
        if np.max(np.abs(self.V - self.V.T)) > 0:
            raise ValueError("interaction matrix must be symmetric")
        if np.any(self.V < 0):
            raise ValueError("interaction entries must be non-negative")
        if self.gamma < 0:
            raise ValueError("decay rate must be non-negative")

    @property
    def dim(self) -> int:
        return dim_for(self.n_atoms)

    @property
    def target(self) -> int:
        return self.n_atoms - 1

    @classmethod
    def two_atom(cls, v0: float, gamma: float = GAMMA_DEFAULT,
                 c6: float = C6_DEFAULT) -> "GateSystem":
        V = np.array([[0.0, v0], [v0, 0.0]])
        return cls(2, V, gamma, c6, r0=spacing_for(v0, c6))

    @classmethod
    def three_atom_line(cls, v0: float, gamma: float = GAMMA_DEFAULT,
                        c6: float = C6_DEFAULT) -> "GateSystem":
        """Linear chain, outer atoms are the controls, central atom is the
        target; next-nearest (control-control) interaction is V0/2^6."""
        vcc = v0 / 2 ** 6
        V = np.array([[0.0, vcc, v0],
                      [vcc, 0.0, v0],
                      [v0, v0, 0.0]])
        return cls(3, V, gamma, c6, r0=spacing_for(v0, c6))

    @classmethod
    def for_qubits(cls, n_qubits: int, v0: float, gamma: float = GAMMA_DEFAULT,
                   c6: float = C6_DEFAULT) -> "GateSystem":
        if n_qubits == 2:
            return cls.two_atom(v0, gamma, c6)
        return cls.three_atom_line(v0, gamma, c6)

    def with_interactions(self, V: np.ndarray) -> "GateSystem":
        """Copy with a replacement interaction matrix (noise realization)."""
        return GateSystem(self.n_atoms, V, self.gamma, self.c6, self.r0)

    def with_gamma(self, gamma: float) -> "GateSystem":
        return GateSystem(self.n_atoms, self.V.copy(), gamma, self.c6, self.r0)

    def lattice_positions(self) -> np.ndarray:
        """Nominal trap centers along x (um), consistent with V."""
        if self.r0 is None:
            raise ValueError("system has no nominal spacing")
        if self.n_atoms == 2:
            return np.array([[0.0, 0.0, 0.0], [self.r0, 0.0, 0.0]])
        return np.array([[-self.r0, 0.0, 0.0],
                         [self.r0, 0.0, 0.0],
                         [0.0, 0.0, 0.0]])


def drive_operators(n_atoms: int, target: int | None = None):
    """(A1, A2): A1 = sum_a |0><r|_a over all atoms, A2 = |1><r|_target.

    The Hamiltonian is H = (Omega1/2) A1 + (Omega2/2) A2 + h.c. + V-part.
    """
    if target is None:
        target = n_atoms - 1
    dim = dim_for(n_atoms)
    a1 = np.zeros((dim, dim), dtype=complex)
    for a in range(n_atoms):
        a1 += embed_single_atom(level_op(0, 2), a, n_atoms)
    a2 = embed_single_atom(level_op(1, 2), target, n_atoms)
    return a1, a2


def interaction_diagonal(sys: GateSystem) -> np.ndarray:
    """Diagonal of sum_{a<b} V_ab |rr><rr|_{ab} in the full basis."""
    diag = np.zeros(sys.dim)
    for i in range(sys.dim):
        levels = basis_levels(i, sys.n_atoms)
        for a in range(sys.n_atoms):
            for b in range(a + 1, sys.n_atoms):
                if levels[a] == 2 and levels[b] == 2:
                    diag[i] += sys.V[a, b]
    return diag


def hamiltonian(sys: GateSystem, pulses: PulseSet, t: float,
                delta1: float = 0.0, delta2: float = 0.0) -> np.ndarray:
    """Full Hamiltonian at time t, including Doppler phase factors."""
    a1, a2 = drive_operators(sys.n_atoms)
    c1 = 0.5 * complex(pulses.omega1.evaluate(t, delta1))
    c2 = 0.5 * complex(pulses.omega2.evaluate(t, delta2))
    h = c1 * a1 + np.conj(c1) * a1.conj().T + c2 * a2 + np.conj(c2) * a2.conj().T
    h += np.diag(interaction_diagonal(sys)).astype(complex)
    return h


def collapse_operators(sys: GateSystem) -> list[np.ndarray]:
    """sqrt(gamma) |g><r|_a for every atom a and ground level g in {0, 1}.

    Ordering matches the paper's L1..L4 for two atoms: control decays to
    |1> then |0>, then target decays to |1> then |0>.
    """
    ops = []
    root = np.sqrt(sys.gamma)
    for a in range(sys.n_atoms):
        for g in (1, 0):
            ops.append(root * embed_single_atom(level_op(g, 2), a, sys.n_atoms))
    return ops


def decay_index_tables(n_atoms: int):
    """Index tables describing each collapse channel |g><r|_a as a gather.

    For channel c, L rho L^dag fills entry (dst, dst') from rho[src, src'],
    where dst runs over states with level g at atom a and src is the same
    state with atom a raised to |r>.  Returns (dst, src) int arrays of shape
    (channels, 3^(n-1)).
    """
    dim = dim_for(n_atoms)
    dsts, srcs = [], []
    for a in range(n_atoms):
        stride = 3 ** (n_atoms - 1 - a)
        for g in (1, 0):
            dst = [i for i in range(dim) if basis_levels(i, n_atoms)[a] == g]
            src = [i + (2 - g) * stride for i in dst]
            dsts.append(dst)
            srcs.append(src)
    return np.array(dsts, dtype=np.int64), np.array(srcs, dtype=np.int64)


def decay_weight_matrix(n_atoms: int, gamma: float) -> np.ndarray:
    """Element-wise anticommutator weights: 0.5*(d_i + d_j) where
    d_i = 2*gamma*(number of Rydberg excitations in basis state i),
    since sum_j L_j^dag L_j = 2*gamma * sum_a |r><r|_a is diagonal."""
    dim = dim_for(n_atoms)
    nr = np.array([basis_levels(i, n_atoms).count(2) for i in range(dim)], dtype=float)
    return gamma * (nr[:, None] + nr[None, :])
