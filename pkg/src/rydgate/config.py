"""Run configuration: a single JSON document in the paper's units.

Frequencies enter as 'X/2pi in MHz', decay rates in kHz, times in us and
distances in um; everything converts to internal units (rad/us, us^-1)
exactly once, here.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .fidelity import CNOT, TOFFOLI, METRIC_MODES, Scenario
from .ga import GAConfig, SearchSpace, DEFAULT_BOX_HALF_WIDTH
from .model import GateSystem, gamma_from_khz, C6_DEFAULT
from .propagator import PropagationConfig
from .pulses import PulseSet, PulseWaveform, mhz_to_angular


class ConfigError(ValueError):
    """Malformed configuration; the message names the offending field."""


DEFAULTS = {
    "qubits": 2,
    "mode": "two-pulse",
    "gamma": 3.0,          # kHz
    "C6_over_2pi_ghz_um6": 863.0,
    "metric_mode": "population",
    "seed": 0,
    "n_steps": 4000,
}

SCAN_AXES = ("sigma_x", "Ta", "delta_omega", "gamma")


def load_config(path: str | Path) -> dict:
    try:
        raw = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}")
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    return resolve_config(raw)


def resolve_config(raw: dict) -> dict:
    cfg = dict(DEFAULTS)
    cfg.update(raw)

    if cfg["qubits"] not in (2, 3):
        raise ConfigError(f"qubits: must be 2 or 3, got {cfg['qubits']!r}")
    if cfg["mode"] not in ("one-pulse", "two-pulse"):
        raise ConfigError(f"mode: must be 'one-pulse' or 'two-pulse', got {cfg['mode']!r}")
    if cfg["metric_mode"] not in METRIC_MODES:
        raise ConfigError(f"metric_mode: must be one of {METRIC_MODES}")

    has_v0 = "V0_over_2pi" in cfg
    has_r0 = "r0" in cfg
    if has_v0 == has_r0:
        raise ConfigError("exactly one of V0_over_2pi (MHz) or r0 (um) must be given")
    c6 = mhz_to_angular(float(cfg["C6_over_2pi_ghz_um6"]) * 1e3)
    if has_r0:
        r0 = float(cfg["r0"])
        if r0 <= 0:
            raise ConfigError("r0: must be positive")
        cfg["V0_over_2pi"] = (c6 / r0 ** 6) / (2 * np.pi)

    cfg.setdefault("Tg", 1.0 if cfg["qubits"] == 2 else 1.2)
    if not float(cfg["Tg"]) > 0:
        raise ConfigError("Tg: must be positive")
    if float(cfg["gamma"]) < 0:
        raise ConfigError("gamma: must be non-negative")
    return cfg


def build_system(cfg: dict) -> GateSystem:
    c6 = mhz_to_angular(float(cfg["C6_over_2pi_ghz_um6"]) * 1e3)
    v0 = mhz_to_angular(float(cfg["V0_over_2pi"]))
    return GateSystem.for_qubits(cfg["qubits"], v0, gamma_from_khz(float(cfg["gamma"])), c6)


def build_pulses(cfg: dict) -> PulseSet:
    block = cfg.get("pulses")
    if not isinstance(block, dict):
        raise ConfigError("pulses: block with coefficient lists is required")
    tg = float(cfg["Tg"])

    def waveform(key: str, phase_key: str) -> PulseWaveform:
        coeffs = block.get(key)
        if not (isinstance(coeffs, (list, tuple)) and len(coeffs) == 3):
            raise ConfigError(f"pulses.{key}: must be a list of 3 MHz coefficients")
        return PulseWaveform.from_mhz(coeffs, tg, float(block.get(phase_key, 0.0)))

    if cfg["mode"] == "one-pulse":
        if "omega" not in block:
            raise ConfigError("pulses.omega: required in one-pulse mode")
        return PulseSet.one_pulse(waveform("omega", "phase"))
    return PulseSet.two_pulse(waveform("omega1", "phase1"), waveform("omega2", "phase2"))


def build_scenario(cfg: dict) -> Scenario:
    gate = CNOT if cfg["qubits"] == 2 else TOFFOLI
    prop = PropagationConfig(n_steps=int(cfg["n_steps"]))
    return Scenario(build_system(cfg), build_pulses(cfg), gate, prop, cfg["metric_mode"])


def build_ga_config(cfg: dict, seed: int | None = None) -> GAConfig:
    block = dict(cfg.get("ga", {}))
    block.pop("box_half_width", None)
    if seed is not None:
        block["rng_seed"] = seed
    else:
        block.setdefault("rng_seed", int(cfg["seed"]))
    try:
        return GAConfig(**block)
    except TypeError as exc:
        raise ConfigError(f"ga: {exc}")


def build_search_space(cfg: dict) -> SearchSpace:
    block = cfg.get("ga", {})
    n_params = 3 if cfg["mode"] == "one-pulse" else 6
    half_mhz = block.get("box_half_width")
    half = mhz_to_angular(float(half_mhz)) if half_mhz is not None else DEFAULT_BOX_HALF_WIDTH
    if "box_center" in block:
        center = [mhz_to_angular(float(c)) for c in block["box_center"]]
        if len(center) != n_params:
            raise ConfigError(f"ga.box_center: expected {n_params} entries")
        return SearchSpace.around(center, half)
    return SearchSpace.symmetric(n_params, half)
