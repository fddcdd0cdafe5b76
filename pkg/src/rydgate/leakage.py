"""Population leakage from |rr> into nearby Rydberg pair states.

Four non-resonant dipole-dipole channels couple |rr> to pair states
|r_c r_t> with coupling B_j = C3_j / r0^3 and Forster defect delta_j.  The
off-diagonal element is B (not B/2); this convention reproduces the
two-level time-averaged leakage 2B^2/(4B^2 + delta^2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .propagator import propagate_pure
from .pulses import mhz_to_angular

AVERAGING_WINDOW = 1.0  # us, the two-qubit gate duration


@dataclass(frozen=True)
class LeakageChannel:
    """One coupled pair state: C3 in rad/us*um^3, defect in rad/us."""

    c3: float
    delta: float

    def __post_init__(self):
        if self.delta == 0:
            raise ValueError("Forster defect must be nonzero")

    def coupling(self, r0: float) -> float:
        """B = C3 / r0^3 in rad/us."""
        if r0 <= 0:
            raise ValueError("distance must be positive")
        return self.c3 / r0 ** 3


# |70S;70S> channels: C3/2pi in GHz*um^3 and delta/2pi in GHz.
DEFAULT_CHANNELS = tuple(
    LeakageChannel(mhz_to_angular(c3_ghz * 1e3), mhz_to_angular(delta_ghz * 1e3))
    for c3_ghz, delta_ghz in ((7.94, 0.71), (6.37, 1.01), (6.59, 0.99), (5.28, 1.29))
)


def single_channel_leakage(b: float, delta: float, duration: float = AVERAGING_WINDOW,
                           n_steps: int | None = None) -> float:
    """Time-averaged population of the coupled pair state, starting in |rr>.

    Two-level evolution under H = B(|rr><p| + h.c.) + delta |p><p|.
    """
    if duration <= 0:
        raise ValueError("duration must be positive")
    if b == 0:
        return 0.0
    h = np.array([[0.0, b], [b, delta]], dtype=complex)
    psi0 = np.array([1.0, 0.0], dtype=complex)
    _, avg = propagate_pure(h, psi0, duration, n_steps)
    return float(avg[1])


def total_leakage(r0: float, channels=DEFAULT_CHANNELS,
                  duration: float = AVERAGING_WINDOW,
                  n_steps: int | None = None) -> float:
    """Time-averaged 1 - P_rr with all channels coupled simultaneously."""
    if duration <= 0:
        raise ValueError("duration must be positive")
    n = len(channels)
    h = np.zeros((n + 1, n + 1), dtype=complex)
    for j, ch in enumerate(channels, start=1):
        h[0, j] = h[j, 0] = ch.coupling(r0)
        h[j, j] = ch.delta
    if np.max(np.abs(h[0, 1:])) == 0:
        return 0.0
    psi0 = np.zeros(n + 1, dtype=complex)
    psi0[0] = 1.0
    _, avg = propagate_pure(h, psi0, duration, n_steps)
    return float(1.0 - avg[0])


def leakage_table(distances, channels=DEFAULT_CHANNELS,
                  duration: float = AVERAGING_WINDOW) -> list[dict]:
    """Per-distance rows mirroring the channel summary: couplings B_j,
    single-channel leakages E_j, and the all-channel average Ebar."""
    rows = []
    for r0 in distances:
        row = {"r0": float(r0)}
        for j, ch in enumerate(channels, start=1):
            b = ch.coupling(r0)
            row[f"B{j}_mhz"] = b / (2.0 * np.pi)
            row[f"E{j}"] = single_channel_leakage(b, ch.delta, duration)
        row["E_total"] = total_leakage(r0, channels, duration)
        rows.append(row)
    return rows


def analytic_single_channel(b: float, delta: float) -> float:
    """Closed-form long-time average 2B^2/(4B^2 + delta^2)."""
    return 2.0 * b ** 2 / (4.0 * b ** 2 + delta ** 2)
