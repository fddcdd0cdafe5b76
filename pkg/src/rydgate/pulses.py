"""Fourier-parameterized pulse waveforms.

Internal units: time in us, angular frequency in rad/us.  Configuration
files quote amplitudes as Omega/2pi in MHz; those convert by a factor 2*pi.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi

PEAK_TO_PEAK_SAMPLES = 10_001


def mhz_to_angular(value_mhz: float) -> float:
    """Convert an 'X/2pi in MHz' value to rad/us."""
    return TWO_PI * value_mhz


def angular_to_mhz(value: float) -> float:
    return value / TWO_PI


@dataclass(frozen=True)
class PulseWaveform:
    """Envelope a0 + a_cos*cos(2*pi*t/T) + a_sin*sin(pi*t/T), times e^{i*phase}.

    Coefficients in rad/us, duration in us.  The cosine term is periodic over
    the gate while the sine term vanishes at both endpoints, so the envelope
    is endpoint-symmetric for any coefficients.
    """

    a0: float
    a_cos: float
    a_sin: float
    duration: float
    phase: float = 0.0

    def __post_init__(self):
        if not self.duration > 0:
            raise ValueError("pulse duration must be positive")
        for c in (self.a0, self.a_cos, self.a_sin, self.phase):
            if not np.isfinite(c):
                raise ValueError("pulse coefficients must be finite")

    @classmethod
    def from_mhz(cls, coeffs, duration: float, phase: float = 0.0) -> "PulseWaveform":
        a0, a1, a2 = (mhz_to_angular(c) for c in coeffs)
        return cls(a0, a1, a2, duration, phase)

    def envelope(self, t):
        """Real amplitude at time(s) t (rad/us)."""
        t = np.asarray(t, dtype=float)
        return (self.a0
                + self.a_cos * np.cos(TWO_PI * t / self.duration)
                + self.a_sin * np.sin(np.pi * t / self.duration))

    def evaluate(self, t, doppler: float = 0.0):
        """Complex amplitude envelope(t) * e^{i(phase + doppler*t)}."""
        tarr = np.asarray(t, dtype=float)
        if np.any(tarr < 0) or np.any(tarr > self.duration):
            raise ValueError(f"t outside [0, {self.duration}]")
        return self.envelope(tarr) * np.exp(1j * (self.phase + doppler * tarr))

    def peak_to_peak(self, samples: int = PEAK_TO_PEAK_SAMPLES) -> float:
        """Max minus min of the real envelope on a uniform grid."""
        env = self.envelope(np.linspace(0.0, self.duration, samples))
        return float(env.max() - env.min())


@dataclass(frozen=True)
class PulseSet:
    """The drive pair: omega1 couples |0>-|r> globally, omega2 couples
    |1>-|r> on the target atom only.  In one-pulse mode both roles share a
    single waveform."""

    omega1: PulseWaveform
    omega2: PulseWaveform
    mode: str  # "one-pulse" | "two-pulse"

    def __post_init__(self):
        if self.mode not in ("one-pulse", "two-pulse"):
            raise ValueError(f"unknown pulse mode {self.mode!r}")
        if self.mode == "one-pulse" and self.omega1 != self.omega2:
            raise ValueError("one-pulse mode requires identical waveforms")
        if self.omega1.duration != self.omega2.duration:
            raise ValueError("both pulses must share the gate duration")

    @property
    def duration(self) -> float:
        return self.omega1.duration

    @classmethod
    def one_pulse(cls, waveform: PulseWaveform) -> "PulseSet":
        return cls(waveform, waveform, "one-pulse")

    @classmethod
    def two_pulse(cls, omega1: PulseWaveform, omega2: PulseWaveform) -> "PulseSet":
        return cls(omega1, omega2, "two-pulse")

    @classmethod
    def from_params(cls, params, duration: float, mode: str) -> "PulseSet":
        """Build from a flat coefficient vector in rad/us (3 or 6 entries)."""
        params = np.asarray(params, dtype=float)
        if mode == "one-pulse":
            if params.shape != (3,):
                raise ValueError("one-pulse mode takes 3 coefficients")
            return cls.one_pulse(PulseWaveform(*params, duration=duration))
        if params.shape != (6,):
            raise ValueError("two-pulse mode takes 6 coefficients")
        return cls.two_pulse(PulseWaveform(*params[:3], duration=duration),
                             PulseWaveform(*params[3:], duration=duration))

    @classmethod
    def from_mhz(cls, coeffs1, coeffs2, duration: float) -> "PulseSet":
        """Two-pulse set from Omega/2pi coefficients in MHz."""
        return cls.two_pulse(PulseWaveform.from_mhz(coeffs1, duration),
                             PulseWaveform.from_mhz(coeffs2, duration))

    @property
    def n_params(self) -> int:
        return 3 if self.mode == "one-pulse" else 6
