"""Monte-Carlo technical-error models.

Covered: interaction fluctuation from Gaussian atomic position spread,
Doppler dephasing from thermal motion, constant laser-amplitude offsets,
and decay-rate scans.  Every trial is a pure function of (master seed,
trial index), so means are independent of execution order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .fidelity import Scenario
from .model import GateSystem, KB, MASS_RB87, K_EFF
from .pulses import mhz_to_angular

MIN_SEPARATION = 0.5  # um; 1/r^6 singularity guard, redraw below this

# Sampled interactions are clamped here.  Beyond ~100x the drive the dynamics
# are blockade-saturated (populations change by O((Omega/V)^2) ~ 1e-4), so the
# cap leaves fidelities unchanged while keeping the fixed-step integrator well
# inside its stability region for close-approach position draws.
V_SATURATION = mhz_to_angular(2000.0)

DEFAULT_TRIALS = 500


@dataclass(frozen=True)
class PositionNoise:
    """Gaussian spread of each atom about its trap center, in um."""

    sigma_x: float = 0.0
    sigma_y: float = 0.27
    sigma_z: float = 0.27

    def __post_init__(self):
        if min(self.sigma_x, self.sigma_y, self.sigma_z) < 0:
            raise ValueError("standard deviations must be non-negative")

    @property
    def sigmas(self) -> np.ndarray:
        return np.array([self.sigma_x, self.sigma_y, self.sigma_z])


@dataclass(frozen=True)
class DopplerNoise:
    """Thermal-motion dephasing at atom temperature Ta (uK)."""

    temperature: float

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be non-negative")


@dataclass(frozen=True)
class AmplitudeNoise:
    """Relative laser-amplitude deviation delta_Omega in [0, 0.05]."""

    delta_rel: float

    def __post_init__(self):
        if self.delta_rel < 0:
            raise ValueError("relative deviation must be non-negative")


@dataclass(frozen=True)
class NoiseModel:
    position: PositionNoise | None = None
    doppler: DopplerNoise | None = None
    amplitude: AmplitudeNoise | None = None


@dataclass(frozen=True)
class NoiseRealization:
    """One Monte-Carlo draw.  V is a full pairwise matrix or None (nominal);
    delta1/delta2 are Doppler detunings (rad/us) applied as e^{i*delta*t};
    amp offsets add to the real pulse envelopes (rad/us)."""

    V: np.ndarray | None = None
    delta1: float = 0.0
    delta2: float = 0.0
    amp_offset1: float = 0.0
    amp_offset2: float = 0.0

    @classmethod
    def none(cls) -> "NoiseRealization":
        return cls()


def doppler_sigma(temperature_uk: float) -> float:
    """Detuning spread k * v_rms in rad/us (numerically equal to the paper's
    'MHz' quotation, since 1 s^-1 = 1e-6 us^-1)."""
    if temperature_uk < 0:
        raise ValueError("temperature must be non-negative")
    v_rms = np.sqrt(KB * temperature_uk * 1e-6 / MASS_RB87)  # m/s
    return K_EFF * v_rms * 1e-6


def sample_interaction(pos: PositionNoise, sys: GateSystem,
                       rng: np.random.Generator) -> np.ndarray:
    """Draw fluctuated pairwise interactions V_ij = C6 / r_ij^6.

    Two atoms: the relative offset is drawn directly (x ~ N(r0, sigma_x),
    y, z ~ N(0, sigma_yz)).  Three atoms: each atom is displaced
    independently about its lattice site and all pairs are recomputed.
    Separations below 0.5 um are rejected and redrawn.
    """
    sig = pos.sigmas
    V = np.zeros_like(sys.V)
    if sys.n_atoms == 2:
        for _ in range(1000):
            rel = rng.normal([sys.r0, 0.0, 0.0], sig)
            r = float(np.linalg.norm(rel))
            if r >= MIN_SEPARATION:
                break
        else:
            raise RuntimeError("could not draw a physical separation")
        V[0, 1] = V[1, 0] = min(sys.c6 / r ** 6, V_SATURATION)
        return V
    sites = sys.lattice_positions()
    for _ in range(1000):
        positions = sites + rng.normal(0.0, 1.0, size=sites.shape) * sig
        dists = [np.linalg.norm(positions[a] - positions[b])
                 for a in range(sys.n_atoms) for b in range(a + 1, sys.n_atoms)]
        if min(dists) >= MIN_SEPARATION:
            break
    else:
        raise RuntimeError("could not draw physical separations")
    k = 0
    for a in range(sys.n_atoms):
        for b in range(a + 1, sys.n_atoms):
            V[a, b] = V[b, a] = min(sys.c6 / dists[k] ** 6, V_SATURATION)
            k += 1
    return V


def sample_realization(model: NoiseModel, scenario: Scenario,
                       rng: np.random.Generator) -> NoiseRealization:
    """Draw one noise realization for the scenario."""
    V = None
    if model.position is not None:
        V = sample_interaction(model.position, scenario.system, rng)
    d1 = d2 = 0.0
    if model.doppler is not None:
        sigma = doppler_sigma(model.doppler.temperature)
        if scenario.pulses.mode == "one-pulse":
            d1 = d2 = rng.normal(0.0, sigma)
        else:
            d1 = rng.normal(0.0, sigma)
            d2 = rng.normal(0.0, sigma)
    off1 = off2 = 0.0
    if model.amplitude is not None:
        # The offset scale is the peak-to-peak amplitude quoted in MHz
        # (Omega/2pi), applied as a rad/us shift; this reproduces the
        # published amplitude-error magnitudes.
        scale = model.amplitude.delta_rel / (2.0 * np.pi)
        half1 = 0.5 * scenario.pulses.omega1.peak_to_peak() * scale
        if scenario.pulses.mode == "one-pulse":
            off1 = off2 = rng.uniform(-half1, half1)
        else:
            half2 = 0.5 * scenario.pulses.omega2.peak_to_peak() * scale
            off1 = rng.uniform(-half1, half1)
            off2 = rng.uniform(-half2, half2)
    return NoiseRealization(V, d1, d2, off1, off2)


def _trial(scenario: Scenario, model: NoiseModel, seed: int, index: int) -> float:
    rng = np.random.default_rng([seed, index])
    return scenario.fidelity(sample_realization(model, scenario, rng))


def average_fidelity(scenario: Scenario, model: NoiseModel,
                     trials: int = DEFAULT_TRIALS, seed: int = 0,
                     threads: int = 1):
    """Mean fidelity and standard error over independent noise draws."""
    if model.position is None and model.doppler is None and model.amplitude is None:
        f = scenario.fidelity()
        return f, 0.0
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(lambda i: _trial(scenario, model, seed, i), range(trials)))
    else:
        values = [_trial(scenario, model, seed, i) for i in range(trials)]
    values = np.array(values)
    return float(values.mean()), float(values.std(ddof=1) / np.sqrt(trials))


def decay_scan(scenario: Scenario, gammas):
    """Decay-induced error E_sp(gamma) with the gamma=0 baseline removed.

    Returns (errors, slope, r_squared) where the fit is E_sp = slope*gamma.
    Rates in us^-1.
    """
    gammas = np.asarray(gammas, dtype=float)
    if np.any(gammas < 0):
        raise ValueError("decay rates must be non-negative")
    f0 = scenario.with_gamma(0.0).fidelity()
    errors = np.array([f0 - scenario.with_gamma(g).fidelity() for g in gammas])
    slope, intercept = np.polyfit(gammas, errors, 1) if gammas.size > 1 else (0.0, 0.0)
    if gammas.size > 1:
        fitted = slope * gammas + intercept
        ss_res = float(np.sum((errors - fitted) ** 2))
        ss_tot = float(np.sum((errors - errors.mean()) ** 2))
        r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    else:
        r2 = 1.0
    return errors, float(slope), r2


def doppler_scan(scenario: Scenario, temperatures, trials: int = DEFAULT_TRIALS,
                 seed: int = 0, threads: int = 1):
    """Mean fidelity imperfection F(Ta=0) - Fbar(Ta) per temperature."""
    f0 = scenario.fidelity()
    rows = []
    for ta in temperatures:
        model = NoiseModel(doppler=DopplerNoise(ta))
        mean, err = average_fidelity(scenario, model, trials, seed, threads)
        rows.append((float(ta), f0 - mean, err))
    return rows


def amplitude_scan(scenario: Scenario, delta_rels, trials: int = DEFAULT_TRIALS,
                   seed: int = 0, threads: int = 1):
    """Mean fidelity imperfection F(0) - Fbar(delta_rel) per grid point."""
    f0 = scenario.fidelity()
    rows = []
    for d in delta_rels:
        model = NoiseModel(amplitude=AmplitudeNoise(d))
        mean, err = average_fidelity(scenario, model, trials, seed, threads)
        rows.append((float(d), f0 - mean, err))
    return rows


def position_scan(scenario: Scenario, sigma_xs, sigma_yz: float = 0.27,
                  trials: int = DEFAULT_TRIALS, seed: int = 0, threads: int = 1):
    """Mean fidelity per sigma_x grid point (sigma_y = sigma_z fixed)."""
    rows = []
    for sx in sigma_xs:
        model = NoiseModel(position=PositionNoise(sx, sigma_yz, sigma_yz))
        mean, err = average_fidelity(scenario, model, trials, seed, threads)
        rows.append((float(sx), mean, err))
    return rows
