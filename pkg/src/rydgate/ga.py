"""Elitist real-coded genetic algorithm with multi-round box recentering.

Each round runs a 20x50 population/generation loop (tournament-2 selection,
blend crossover with an independent mixing weight per gene, per-gene
Gaussian mutation, the single best individual copied unchanged into the
next generation).  Between rounds the
search box is recentered on the round's best parameters and its widths are
halved, down to a floor; the loop stops once consecutive round bests differ
by less than stop_tol.  Fitness is evaluated noise-free; noise robustness is
assessed afterwards.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict
from typing import Callable, Sequence

import numpy as np

from .fidelity import Scenario, gate_fidelity
from .pulses import PulseSet, mhz_to_angular, angular_to_mhz

DEFAULT_BOX_HALF_WIDTH = mhz_to_angular(20.0)  # rad/us per coefficient
MIN_BOX_WIDTH_DEFAULT = mhz_to_angular(0.05)


@dataclass(frozen=True)
class SearchSpace:
    """Per-parameter closed intervals, in rad/us."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lo", np.asarray(self.lo, dtype=float))
        object.__setattr__(self, "hi", np.asarray(self.hi, dtype=float))
        if self.lo.shape != self.hi.shape or self.lo.ndim != 1:
            raise ValueError("lo/hi must be 1-D arrays of equal length")
        if np.any(self.lo > self.hi):
            raise ValueError("every interval must satisfy lo <= hi")

    @property
    def n_params(self) -> int:
        return self.lo.size

    @classmethod
    def symmetric(cls, n_params: int, half_width: float = DEFAULT_BOX_HALF_WIDTH) -> "SearchSpace":
        return cls(-half_width * np.ones(n_params), half_width * np.ones(n_params))

    @classmethod
    def around(cls, center: Sequence[float], half_width: float) -> "SearchSpace":
        c = np.asarray(center, dtype=float)
        return cls(c - half_width, c + half_width)


@dataclass(frozen=True)
class GAConfig:
    population: int = 20
    generations: int = 50
    elite_count: int = 1
    crossover_prob: float = 0.9
    mutation_prob: float = 0.1
    mutation_scale: float = 0.1  # fraction of the current box width, per gene
    tournament_size: int = 2
    max_rounds: int = 12
    stop_tol: float = 1e-4
    shrink_factor: float = 0.5
    min_box_width: float = MIN_BOX_WIDTH_DEFAULT
    rng_seed: int = 0

    def __post_init__(self):
        if self.population < 2:
            raise ValueError("population must be at least 2")
        if self.stop_tol <= 0:
            raise ValueError("stop_tol must be positive")


@dataclass
class GAResult:
    best_params: np.ndarray
    best_fidelity: float
    round_history: list[float]
    rounds_used: int
    seed: int

    def to_dict(self, params_in_mhz: bool = True) -> dict:
        params = self.best_params
        if params_in_mhz:
            params = np.array([angular_to_mhz(p) for p in params])
        return {
            "best_params_mhz" if params_in_mhz else "best_params": params.tolist(),
            "best_fidelity": self.best_fidelity,
            "round_history": list(self.round_history),
            "rounds_used": self.rounds_used,
            "seed": self.seed,
        }

    def to_json(self, params_in_mhz: bool = True, **kwargs) -> str:
        return json.dumps(self.to_dict(params_in_mhz), **kwargs)


class NonFiniteFitnessError(RuntimeError):
    def __init__(self, params: np.ndarray, value: float):
        super().__init__(f"objective returned non-finite value {value!r} at params {params.tolist()}")
        self.params = params
        self.value = value


def _evaluate(objective, pop: np.ndarray) -> np.ndarray:
    fitness = np.empty(pop.shape[0])
    for i, params in enumerate(pop):
        val = float(objective(params))
        if not np.isfinite(val):
            raise NonFiniteFitnessError(params, val)
        fitness[i] = val
    return fitness


def _run_round(objective, lo, hi, cfg: GAConfig, rng: np.random.Generator,
               seed_individual: np.ndarray | None):
    n_params = lo.size
    pop = rng.uniform(lo, hi, size=(cfg.population, n_params))
    if seed_individual is not None:
        pop[0] = np.clip(seed_individual, lo, hi)
    fitness = _evaluate(objective, pop)
    width = hi - lo
    for _ in range(cfg.generations - 1):
        order = np.argsort(fitness)[::-1]
        new_pop = np.empty_like(pop)
        new_pop[:cfg.elite_count] = pop[order[:cfg.elite_count]]
        for i in range(cfg.elite_count, cfg.population):
            parents = []
            for _ in range(2):
                contenders = rng.integers(0, cfg.population, size=cfg.tournament_size)
                parents.append(pop[contenders[np.argmax(fitness[contenders])]])
            if rng.random() < cfg.crossover_prob:
                alpha = rng.random(n_params)
                child = alpha * parents[0] + (1.0 - alpha) * parents[1]
            else:
                child = parents[0].copy()
            for g in range(n_params):
                if rng.random() < cfg.mutation_prob:
                    child[g] += rng.normal(0.0, cfg.mutation_scale * width[g])
            new_pop[i] = np.clip(child, lo, hi)
        pop = new_pop
        new_fit = np.empty(cfg.population)
        new_fit[:cfg.elite_count] = fitness[order[:cfg.elite_count]]
        new_fit[cfg.elite_count:] = _evaluate(objective, pop[cfg.elite_count:])
        fitness = new_fit
    best = int(np.argmax(fitness))
    return pop[best].copy(), float(fitness[best])


def optimize(objective: Callable[[np.ndarray], float], space: SearchSpace,
             cfg: GAConfig | None = None) -> GAResult:
    """Maximize the objective over the search space.

    Deterministic for a fixed (seed, config, objective); all random draws
    happen on a single generator stream in a fixed order.
    """
    cfg = cfg or GAConfig()
    rng = np.random.default_rng(cfg.rng_seed)
    lo = space.lo.copy()
    hi = space.hi.copy()
    if np.all(lo == hi):
        # Collapsed box: nothing to search, report the single point.
        fit = _evaluate(objective, lo[None, :])[0]
        return GAResult(lo.copy(), float(fit), [float(fit)], 1, cfg.rng_seed)
    history: list[float] = []
    best_params = None
    best_fitness = -np.inf
    for _ in range(cfg.max_rounds):
        params, fit = _run_round(objective, lo, hi, cfg, rng, best_params)
        if fit > best_fitness:
            best_params, best_fitness = params, fit
        history.append(best_fitness)
        if len(history) >= 2 and abs(history[-1] - history[-2]) < cfg.stop_tol:
            break
        half = np.maximum(cfg.shrink_factor * (hi - lo), cfg.min_box_width) / 2.0
        lo = best_params - half
        hi = best_params + half
    return GAResult(best_params, best_fitness, history, len(history), cfg.rng_seed)


def fitness_of(params: np.ndarray, scenario: Scenario) -> float:
    """Gate fidelity of the scenario with pulses built from flat params."""
    pulses = PulseSet.from_params(params, scenario.pulses.duration, scenario.pulses.mode)
    return gate_fidelity(scenario.system, pulses, scenario.cfg, None,
                         scenario.gate, scenario.metric_mode)


def make_objective(scenario: Scenario) -> Callable[[np.ndarray], float]:
    return lambda params: fitness_of(params, scenario)
