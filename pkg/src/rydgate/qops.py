"""Minimal complex linear algebra for 3^n-dimensional Hilbert spaces.

Each atom carries three levels: 0 and 1 are the qubit ground states, 2 is
the Rydberg level.  Basis kets are tuples of levels with the first atom most
significant (controls first, target last).
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

N_LEVELS = 3

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-8
POSITIVITY_TOL = 1e-9


def dim_for(n_atoms: int) -> int:
    return N_LEVELS ** n_atoms


def basis_index(levels: Sequence[int]) -> int:
    """Base-3 positional encoding of a ket, first atom most significant."""
    idx = 0
    for lv in levels:
        if lv not in (0, 1, 2):
            raise ValueError(f"level must be 0, 1 or 2, got {lv}")
        idx = 3 * idx + lv
    return idx


def basis_levels(index: int, n_atoms: int) -> tuple[int, ...]:
    """Inverse of :func:`basis_index`."""
    if not 0 <= index < dim_for(n_atoms):
        raise ValueError(f"index {index} out of range for {n_atoms} atoms")
    out = []
    for _ in range(n_atoms):
        out.append(index % 3)
        index //= 3
    return tuple(reversed(out))


def computational_kets(n_atoms: int) -> list[tuple[int, ...]]:
    """All 2^n computational basis kets (levels 0/1 only), in binary order."""
    kets = []
    for b in range(2 ** n_atoms):
        kets.append(tuple((b >> (n_atoms - 1 - a)) & 1 for a in range(n_atoms)))
    return kets


def ket_vector(levels: Sequence[int]) -> np.ndarray:
    vec = np.zeros(dim_for(len(levels)), dtype=complex)
    vec[basis_index(levels)] = 1.0
    return vec


def embed_single_atom(op3: np.ndarray, atom: int, n_atoms: int) -> np.ndarray:
    """Tensor a 3x3 operator acting on one atom with identities on the rest."""
    op3 = np.asarray(op3, dtype=complex)
    if op3.shape != (3, 3):
        raise ValueError(f"expected a 3x3 operator, got shape {op3.shape}")
    if not 0 <= atom < n_atoms:
        raise ValueError(f"atom index {atom} out of range for {n_atoms} atoms")
    out = np.array([[1.0 + 0j]])
    for a in range(n_atoms):
        out = np.kron(out, op3 if a == atom else np.eye(3))
    return out


def level_op(bra_level: int, ket_level: int) -> np.ndarray:
    """Single-atom operator |bra_level><ket_level|."""
    op = np.zeros((3, 3), dtype=complex)
    op[bra_level, ket_level] = 1.0
    return op


def hermitize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


def expectation(rho: np.ndarray, levels: Sequence[int]) -> float:
    """<ket|rho|ket> for a basis ket, asserting the value is real."""
    rho = np.asarray(rho)
    dim = dim_for(len(levels))
    if rho.shape != (dim, dim):
        raise ValueError(f"density matrix shape {rho.shape} does not match ket of {len(levels)} atoms")
    val = rho[basis_index(levels), basis_index(levels)]
    if abs(val.imag) >= 1e-10:
        raise ValueError(f"diagonal element has imaginary part {val.imag:g}")
    return float(val.real)


class DensityMatrix:
    """A validated Hermitian, trace-one, positive-semidefinite matrix."""

    def __init__(self, matrix: np.ndarray, check_positivity: bool = True):
        matrix = np.asarray(matrix, dtype=complex)
        dim = matrix.shape[0]
        if matrix.shape != (dim, dim):
            raise ValueError("density matrix must be square")
        n = round(np.log(dim) / np.log(3))
        if 3 ** n != dim:
            raise ValueError(f"dimension {dim} is not a power of 3")
        if np.max(np.abs(matrix - matrix.conj().T)) > HERMITICITY_TOL:
            raise ValueError("matrix is not Hermitian within tolerance")
        if abs(np.trace(matrix).real - 1.0) > TRACE_TOL:
            raise ValueError(f"trace {np.trace(matrix).real!r} deviates from 1")
        if check_positivity:
            if np.linalg.eigvalsh(hermitize(matrix)).min() < -POSITIVITY_TOL:
                raise ValueError("matrix has a significantly negative eigenvalue")
        self.matrix = matrix
        self.n_atoms = n

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def pure(cls, levels: Iterable[int]) -> "DensityMatrix":
        vec = ket_vector(tuple(levels))
        return cls(np.outer(vec, vec.conj()))

    def expectation(self, levels: Sequence[int]) -> float:
        return expectation(self.matrix, levels)

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def populations(self) -> np.ndarray:
        return self.matrix.diagonal().real.copy()
