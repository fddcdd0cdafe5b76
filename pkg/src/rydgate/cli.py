"""Command-line entry point: simulate, optimize, scan, leakage.

All outputs are plain CSV/JSON written to --out; every JSON document embeds
the fully-resolved configuration for provenance.  Identical config and seed
produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import (ConfigError, SCAN_AXES, build_ga_config, build_pulses,
                     build_scenario, build_search_space, build_system, load_config)
from .fidelity import gate_fidelity
from .ga import GAConfig, NonFiniteFitnessError, SearchSpace, make_objective, optimize
from .leakage import leakage_table
from .model import gamma_from_khz
from .noise import (AmplitudeNoise, DopplerNoise, NoiseModel, PositionNoise,
                    average_fidelity, decay_scan)
from .propagator import PropagationConfig, PropagationError, propagate_states
from .qops import basis_index, computational_kets, dim_for, basis_levels

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _ket_label(levels) -> str:
    return "".join(str(lv) for lv in levels)


def cmd_simulate(cfg: dict, out: Path, threads: int) -> int:
    scenario = build_scenario(cfg)
    sys_, pulses = scenario.system, scenario.pulses
    kets = computational_kets(sys_.n_atoms)
    dim = sys_.dim
    rho = np.zeros((len(kets), dim, dim), dtype=complex)
    for b, ket in enumerate(kets):
        rho[b, basis_index(ket), basis_index(ket)] = 1.0
    prop = PropagationConfig(n_steps=scenario.cfg.n_steps,
                             record_stride=max(scenario.cfg.n_steps // 400, 1))
    rho, times, traj = propagate_states(sys_, pulses, rho, prop)

    for b, ket in enumerate(kets):
        header = ["t_us"] + [f"p_{_ket_label(basis_levels(i, sys_.n_atoms))}" for i in range(dim)]
        rows = [[float(t)] + [float(p) for p in traj[k, b, :]] for k, t in enumerate(times)]
        _write_csv(out / f"trajectory_{_ket_label(ket)}.csv", header, rows)

    fidelities = {}
    for mode in ("population", "uhlmann"):
        total = 0.0
        for b, ket in enumerate(kets):
            idx = basis_index(scenario.gate.apply(ket))
            overlap = max(rho[b, idx, idx].real, 0.0)
            total += np.sqrt(overlap) if mode == "uhlmann" else overlap
        fidelities[mode] = total / len(kets)

    summary = {
        "command": "simulate",
        "version": __version__,
        "gate": scenario.gate.kind,
        "fidelity": fidelities,
        "config": cfg,
    }
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(f"{scenario.gate.kind} fidelity: population={fidelities['population']:.6f} "
          f"uhlmann={fidelities['uhlmann']:.6f}")
    return EXIT_OK


def _selftest_objective(params: np.ndarray) -> float:
    center = np.linspace(-3.0, 3.0, params.size)
    return 1.0 - float(np.sum((params - center) ** 2))


def cmd_optimize(cfg: dict, out: Path, threads: int, selftest: bool) -> int:
    if selftest:
        ga_cfg = GAConfig(rng_seed=int(cfg.get("seed", 0)))
        space = SearchSpace.symmetric(6, 10.0)
        result = optimize(_selftest_objective, space, ga_cfg)
        params_in_mhz = False
    else:
        scenario = build_scenario_for_ga(cfg)
        ga_cfg = build_ga_config(cfg)
        space = build_search_space(cfg)
        result = optimize(make_objective(scenario), space, ga_cfg)
        params_in_mhz = True
    doc = result.to_dict(params_in_mhz=params_in_mhz)
    doc["command"] = "optimize"
    doc["selftest"] = selftest
    doc["config"] = cfg
    (out / "ga_result.json").write_text(json.dumps(doc, indent=2) + "\n")
    print(f"best fidelity {result.best_fidelity:.6f} after {result.rounds_used} rounds")
    return EXIT_OK


def build_scenario_for_ga(cfg: dict):
    # GA fitness does not need pulse coefficients in the config
    cfg = dict(cfg)
    n = 3 if cfg["mode"] == "one-pulse" else 6
    zero = [0.0, 0.0, 0.0]
    cfg.setdefault("pulses", {"omega": zero} if n == 3 else {"omega1": zero, "omega2": zero})
    return build_scenario(cfg)


def cmd_scan(cfg: dict, out: Path, threads: int, axis: str, grid) -> int:
    if axis not in SCAN_AXES:
        raise ConfigError(f"scan axis must be one of {SCAN_AXES}, got {axis!r}")
    scenario = build_scenario(cfg)
    noise_block = cfg.get("noise", {})
    trials = int(noise_block.get("trials", 500))
    seed = int(cfg.get("seed", 0))
    sigma_yz = float(noise_block.get("sigma_y", 0.27))
    rows = []
    if axis == "gamma":
        gammas = [gamma_from_khz(float(g)) for g in grid]
        errors, slope, r2 = decay_scan(scenario, gammas)
        for g_khz, err in zip(grid, errors):
            rows.append([float(g_khz), float(err), 0.0, 1, seed])
        header = ["gamma_khz", "decay_error", "std_error", "trials", "seed"]
        print(f"decay scan: slope={slope:.4g} per us^-1, R^2={r2:.5f}")
    else:
        f0 = scenario.fidelity()
        header = [axis, "mean_fidelity", "imperfection", "std_error", "trials", "seed"]
        for value in grid:
            value = float(value)
            if axis == "sigma_x":
                model = NoiseModel(position=PositionNoise(value, sigma_yz, sigma_yz))
            elif axis == "Ta":
                model = NoiseModel(doppler=DopplerNoise(value))
            else:
                model = NoiseModel(amplitude=AmplitudeNoise(value))
            mean, err = average_fidelity(scenario, model, trials, seed, threads)
            rows.append([value, float(mean), float(f0 - mean), float(err), trials, seed])
    _write_csv(out / f"scan_{axis}.csv", header, rows)
    print(f"wrote scan_{axis}.csv ({len(rows)} rows)")
    return EXIT_OK


def cmd_leakage(cfg: dict, out: Path, distances) -> int:
    if any(float(d) <= 0 for d in distances):
        raise ConfigError("leakage distances must be positive")
    rows = leakage_table([float(d) for d in distances])
    header = list(rows[0].keys())
    _write_csv(out / "leakage.csv", header, [[row[k] for k in header] for row in rows])
    for row in rows:
        print(f"r0={row['r0']:g} um: E_total={row['E_total']:.3e}")
    return EXIT_OK


def _parse_grid(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise ConfigError(f"could not parse grid {text!r} as comma-separated floats")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rydgate",
                                     description="Rydberg-atom CNOT/Toffoli gate simulator and pulse optimizer")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config_required=True):
        p.add_argument("--config", required=config_required, help="JSON configuration file")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--threads", type=int, default=1, help="worker cap (does not affect results)")
        p.add_argument("--metric", choices=["population", "uhlmann"], default=None)

    p = sub.add_parser("simulate", help="propagate all basis inputs; emit trajectories and fidelity")
    common(p)
    p = sub.add_parser("optimize", help="run the genetic pulse optimization")
    common(p, config_required=False)
    p.add_argument("--selftest", action="store_true", help="optimize a known quadratic instead of the gate")
    p = sub.add_parser("scan", help="Monte-Carlo noise scan over one axis")
    common(p)
    p.add_argument("--axis", required=True, choices=list(SCAN_AXES))
    p.add_argument("--grid", required=True, help="comma-separated scan values")
    p = sub.add_parser("leakage", help="Rydberg pair-state leakage table")
    common(p, config_required=False)
    p.add_argument("--distances", default="4.89,7.10,9.76", help="comma-separated r0 values in um")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.config:
            cfg = load_config(args.config)
        else:
            cfg = {}
        if args.seed is not None:
            cfg["seed"] = args.seed
        if args.metric is not None:
            cfg["metric_mode"] = args.metric
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)

        if args.command == "simulate":
            return cmd_simulate(cfg, out, args.threads)
        if args.command == "optimize":
            if not args.selftest and not args.config:
                raise ConfigError("optimize requires --config unless --selftest is given")
            return cmd_optimize(cfg, out, args.threads, args.selftest)
        if args.command == "scan":
            return cmd_scan(cfg, out, args.threads, args.axis, _parse_grid(args.grid))
        if args.command == "leakage":
            return cmd_leakage(cfg, out, _parse_grid(args.distances))
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (PropagationError, NonFiniteFitnessError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
