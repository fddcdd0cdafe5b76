"""Shared fixtures: published pulse parameter sets and scenario builders.

All coefficients are 'value/2pi in MHz' exactly as tabulated; conversion to
rad/us happens inside the builders.
"""

import numpy as np
import pytest

from rydgate import (CNOT, TOFFOLI, GateSystem, PulseSet, PulseWaveform,
                     PropagationConfig, Scenario, mhz_to_angular)

# Published two-qubit rows: V0/2pi (MHz), r0 (um), one-pulse coefficients,
# F2_one, omega1 coefficients, omega2 coefficients, F2_two.
TABLE3 = [
    (1.0, 9.76, (-5.8283, -5.5942, 1.3558), 0.9935,
     (-0.9549, -1.9544, -0.0631), (-2.8310, -3.6488, 0.0074), 0.9951),
    (2.0, 8.69, (-8.0524, -2.3823, -6.2005), 0.9938,
     (-3.2197, -1.6527, -4.3272), (-5.5704, 0.5088, -5.5704), 0.9897),
    (3.0, 8.13, (-0.8549, -15.0568, 4.5848), 0.9783,
     (-6.4985, 7.2516, 0.2753), (-0.0947, -3.0809, 0.5679), 0.9752),
    (4.0, 7.74, (-2.6977, -15.8330, 7.5137), 0.9810,
     (1.6474, -2.2875, 1.2089), (0.5896, 1.7279, 0.0084), 0.9723),
    (5.0, 7.46, (6.1341, -11.1408, 9.1814), 0.9840,
     (-1.4798, -1.0744, -4.0572), (-1.2613, 4.4488, 5.7295), 0.9804),
    (6.0, 7.24, (-0.5748, -15.1009, 8.7235), 0.9899,
     (-1.4115, -2.2769, -2.3879), (0.5608, -1.6526, -1.5915), 0.9834),
    (7.0, 7.10, (-0.7619, -15.7833, 8.9923), 0.9923,
     (-3.9621, -0.7858, 1.5915), (1.0942, -1.9068, -2.2182), 0.9921),
]

# Headline rows (the strongest and weakest interaction, two-pulse scheme).
TABLE1 = [
    (7.0, (-3.9621, -0.7858, 1.5915), (1.0942, -1.9068, -2.2182), 0.9921),
    (1.0, (-0.9549, -1.9544, -0.0631), (-2.8310, -3.6488, 0.0074), 0.9951),
]

TG_2Q = 1.0  # us
TG_3Q = 1.2  # us


def one_pulse_scenario(v0_mhz, coeffs, n_steps=4000, metric="uhlmann",
                       gamma_khz=3.0):
    sys_ = GateSystem.two_atom(mhz_to_angular(v0_mhz), gamma_khz * 1e-3)
    pulses = PulseSet.one_pulse(PulseWaveform.from_mhz(coeffs, TG_2Q))
    return Scenario(sys_, pulses, CNOT, PropagationConfig(n_steps), metric)


def two_pulse_scenario(v0_mhz, c1, c2, n_steps=4000, metric="uhlmann",
                       gamma_khz=3.0):
    sys_ = GateSystem.two_atom(mhz_to_angular(v0_mhz), gamma_khz * 1e-3)
    pulses = PulseSet.two_pulse(PulseWaveform.from_mhz(c1, TG_2Q),
                                PulseWaveform.from_mhz(c2, TG_2Q))
    return Scenario(sys_, pulses, CNOT, PropagationConfig(n_steps), metric)


def toffoli_scenario(v0_mhz, c1, c2, n_steps=4000, metric="uhlmann",
                     gamma_khz=3.0):
    sys_ = GateSystem.three_atom_line(mhz_to_angular(v0_mhz), gamma_khz * 1e-3)
    pulses = PulseSet.two_pulse(PulseWaveform.from_mhz(c1, TG_3Q),
                                PulseWaveform.from_mhz(c2, TG_3Q))
    return Scenario(sys_, pulses, TOFFOLI, PropagationConfig(n_steps), metric)


@pytest.fixture(scope="session")
def reference_scenario():
    """The headline two-pulse configuration (V0/2pi = 7 MHz)."""
    row = TABLE1[0]
    return two_pulse_scenario(row[0], row[1], row[2])


def all_table_scenarios(n_steps=4000):
    """Every published parameter set as (label, scenario) pairs."""
    out = []
    for v0, _, one, _, c1, c2, _ in TABLE3:
        out.append((f"one-pulse V0={v0:g}", one_pulse_scenario(v0, one, n_steps)))
        out.append((f"two-pulse V0={v0:g}", two_pulse_scenario(v0, c1, c2, n_steps)))
    return out
