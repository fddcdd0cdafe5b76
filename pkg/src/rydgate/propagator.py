"""Time evolution under the Lindblad master equation (fixed-step RK4).

The default 4000 steps per gate resolve the largest pulse amplitudes
(~2pi*16 MHz) at ~0.025 rad per step.  The state is hermitized every step to
suppress floating-point drift; the trace is never renormalized, so trace
drift beyond tolerance signals an integration problem and raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from . import _kernels
from .model import (GateSystem, drive_operators, interaction_diagonal,
                    decay_index_tables, decay_weight_matrix)
from .pulses import PulseSet
from .qops import DensityMatrix

if TYPE_CHECKING:
    from .noise import NoiseRealization

TRACE_DRIFT_TOL = 1e-8
NORM_DRIFT_TOL = 1e-8

DEFAULT_STEPS = 4000

# max phase advance per step for the diagonal interaction; strongly
# blockaded noise realizations get their step count boosted to stay inside
# the RK4 stability region
MAX_PHASE_PER_STEP = 1.0  # rad


class PropagationError(RuntimeError):
    """Raised on trace/norm drift or non-finite state entries."""


@dataclass(frozen=True)
class PropagationConfig:
    n_steps: int = DEFAULT_STEPS
    hermitize_every_step: bool = True
    record_stride: int = 0

    def __post_init__(self):
        if self.n_steps < 1:
            raise ValueError("n_steps must be positive")
        if self.record_stride < 0:
            raise ValueError("record_stride must be non-negative")


def _pulse_coefficients(pulses: PulseSet, n_steps: int, noise=None):
    """Complex drive amplitudes (including the 1/2) on the half-step grid."""
    tgrid = np.linspace(0.0, pulses.duration, 2 * n_steps + 1)
    d1 = d2 = 0.0
    off1 = off2 = 0.0
    if noise is not None:
        d1, d2 = noise.delta1, noise.delta2
        off1, off2 = noise.amp_offset1, noise.amp_offset2
    w1, w2 = pulses.omega1, pulses.omega2
    c1 = 0.5 * (w1.envelope(tgrid) + off1) * np.exp(1j * (w1.phase + d1 * tgrid))
    c2 = 0.5 * (w2.envelope(tgrid) + off2) * np.exp(1j * (w2.phase + d2 * tgrid))
    return tgrid, np.ascontiguousarray(c1, dtype=complex), np.ascontiguousarray(c2, dtype=complex)


def _record_count(n_steps: int, stride: int) -> int:
    if stride <= 0:
        return 0
    marks = {s for s in range(stride, n_steps + 1, stride)}
    marks.add(n_steps)
    return 1 + len(marks)


def propagate_states(sys: GateSystem, pulses: PulseSet, rho_batch: np.ndarray,
                     cfg: PropagationConfig | None = None,
                     noise: "NoiseRealization | None" = None):
    """Propagate a (B, d, d) batch of density matrices over the gate.

    Returns (rho_batch, times, traj) where traj has shape (n_records, B, d)
    of diagonal populations, or None when recording is off.
    """
    cfg = cfg or PropagationConfig()
    eff_sys = sys if noise is None or noise.V is None else sys.with_interactions(noise.V)
    rho = np.array(rho_batch, dtype=complex, order="C", copy=True)
    if rho.ndim != 3 or rho.shape[1:] != (sys.dim, sys.dim):
        raise ValueError(f"expected batch shape (B, {sys.dim}, {sys.dim}), got {rho.shape}")

    a1, a2 = drive_operators(sys.n_atoms)
    vdiag = interaction_diagonal(eff_sys)
    n_steps, stride = cfg.n_steps, cfg.record_stride
    boost = int(np.ceil(np.max(vdiag) * pulses.duration
                        / (MAX_PHASE_PER_STEP * n_steps)))
    if boost > 1:
        n_steps *= boost
        stride *= boost

    tgrid, c1, c2 = _pulse_coefficients(pulses, n_steps, noise)
    dec_dst, dec_src = decay_index_tables(sys.n_atoms)
    decw = decay_weight_matrix(sys.n_atoms, eff_sys.gamma)
    dt = pulses.duration / n_steps

    n_rec = _record_count(n_steps, stride)
    traj = np.zeros((max(n_rec, 1), rho.shape[0], sys.dim))
    _kernels.rk4_lindblad(rho, c1, c2, a1, a2, vdiag, decw, dec_dst, dec_src,
                          eff_sys.gamma, dt, n_steps,
                          cfg.hermitize_every_step, traj, stride)

    if not np.all(np.isfinite(rho.view(float))):
        raise PropagationError("non-finite entries in the propagated state")
    traces = np.einsum("bii->b", rho).real
    worst = np.max(np.abs(traces - 1.0))
    if worst > TRACE_DRIFT_TOL:
        raise PropagationError(
            f"trace drift {worst:.3e} exceeds {TRACE_DRIFT_TOL:g}; decrease the step size")

    if stride > 0:
        marks = sorted({s for s in range(stride, n_steps + 1, stride)} | {n_steps})
        times = np.concatenate(([0.0], dt * np.array(marks, dtype=float)))
        return rho, times, traj
    return rho, None, None


def propagate(sys: GateSystem, pulses: PulseSet, rho0: DensityMatrix,
              cfg: PropagationConfig | None = None,
              noise: "NoiseRealization | None" = None) -> DensityMatrix:
    """Evolve a single density matrix to t = T_g."""
    rho, _, _ = propagate_states(sys, pulses, rho0.matrix[None, :, :], cfg, noise)
    return DensityMatrix(rho[0], check_positivity=False)


def propagate_with_trajectory(sys: GateSystem, pulses: PulseSet, rho0: DensityMatrix,
                              cfg: PropagationConfig | None = None,
                              noise: "NoiseRealization | None" = None):
    """Like :func:`propagate` but also returns (times, populations)."""
    cfg = cfg or PropagationConfig()
    if cfg.record_stride <= 0:
        cfg = PropagationConfig(cfg.n_steps, cfg.hermitize_every_step, record_stride=max(cfg.n_steps // 400, 1))
    rho, times, traj = propagate_states(sys, pulses, rho0.matrix[None, :, :], cfg, noise)
    return DensityMatrix(rho[0], check_positivity=False), times, traj[:, 0, :]


def _default_pure_steps(h: np.ndarray, duration: float) -> int:
    # keep |H|*dt small enough that RK4 norm drift stays below tolerance
    bound = float(np.max(np.sum(np.abs(h), axis=1)))
    return max(int(np.ceil(bound * duration / 0.005)), 100)


def propagate_pure(h: np.ndarray, psi0: np.ndarray, duration: float,
                   n_steps: int | None = None, record_stride: int = 0):
    """Schrodinger evolution under a constant Hamiltonian.

    Returns (psi_final, avg_populations) where avg_populations is the
    per-level population averaged over the whole evolution.  With
    record_stride > 0, returns (psi_final, avg_populations, times, states).
    """
    h = np.ascontiguousarray(h, dtype=complex)
    if np.max(np.abs(h - h.conj().T)) > 1e-12:
        raise ValueError("Hamiltonian must be Hermitian")
    if n_steps is None:
        n_steps = _default_pure_steps(h, duration)
    psi = np.ascontiguousarray(psi0, dtype=complex).copy()
    dt = duration / n_steps
    n_rec = _record_count(n_steps, record_stride)
    traj = np.zeros((max(n_rec, 1), psi.shape[0]), dtype=complex)
    avg = _kernels.rk4_pure_const(psi, h, dt, n_steps, traj, record_stride)
    drift = abs(float(np.vdot(psi, psi).real) - float(np.vdot(psi0, psi0).real))
    if drift > NORM_DRIFT_TOL:
        raise PropagationError(f"norm drift {drift:.3e} exceeds {NORM_DRIFT_TOL:g}")
    if record_stride > 0:
        marks = sorted({s for s in range(record_stride, n_steps + 1, record_stride)} | {n_steps})
        times = np.concatenate(([0.0], dt * np.array(marks, dtype=float)))
        return psi, avg, times, traj
    return psi, avg
