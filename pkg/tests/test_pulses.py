"""Pulse waveform parameterization."""

import numpy as np
import pytest

from rydgate.pulses import (PulseSet, PulseWaveform, angular_to_mhz,
                            mhz_to_angular)


def test_unit_conversion_round_trip():
    assert mhz_to_angular(1.0) == pytest.approx(2.0 * np.pi)
    assert angular_to_mhz(mhz_to_angular(7.3)) == pytest.approx(7.3)


def test_envelope_formula():
    w = PulseWaveform(1.0, 2.0, 3.0, duration=2.0)
    t = np.linspace(0.0, 2.0, 17)
    expected = 1.0 + 2.0 * np.cos(2 * np.pi * t / 2.0) + 3.0 * np.sin(np.pi * t / 2.0)
    assert np.allclose(w.envelope(t), expected)


def test_envelope_endpoint_symmetry():
    # cos term is gate-periodic, sin term vanishes at 0 and T
    rng = np.random.default_rng(3)
    for _ in range(5):
        a0, ac, asin = rng.normal(size=3)
        w = PulseWaveform(a0, ac, asin, duration=1.0)
        assert w.envelope(0.0) == pytest.approx(w.envelope(1.0))
        assert w.envelope(0.0) == pytest.approx(a0 + ac)


def test_evaluate_applies_phase_and_doppler():
    w = PulseWaveform(1.0, 0.0, 0.0, duration=1.0, phase=0.25)
    val = w.evaluate(0.5, doppler=2.0)
    assert val == pytest.approx(np.exp(1j * (0.25 + 1.0)))
    with pytest.raises(ValueError):
        w.evaluate(1.5)


def test_from_mhz_scales_by_two_pi():
    w = PulseWaveform.from_mhz((1.0, -2.0, 0.5), duration=1.0)
    assert w.a0 == pytest.approx(2 * np.pi)
    assert w.a_cos == pytest.approx(-4 * np.pi)
    assert w.a_sin == pytest.approx(np.pi)


def test_peak_to_peak_pure_cosine():
    w = PulseWaveform(0.0, 3.0, 0.0, duration=1.0)
    assert w.peak_to_peak() == pytest.approx(6.0, rel=1e-6)


def test_peak_to_peak_offset_invariant():
    base = PulseWaveform(0.0, 1.3, -0.7, duration=1.0)
    shifted = PulseWaveform(5.0, 1.3, -0.7, duration=1.0)
    assert base.peak_to_peak() == pytest.approx(shifted.peak_to_peak())


def test_waveform_validation():
    with pytest.raises(ValueError):
        PulseWaveform(1.0, 0.0, 0.0, duration=0.0)
    with pytest.raises(ValueError):
        PulseWaveform(np.nan, 0.0, 0.0, duration=1.0)


class TestPulseSet:
    def test_one_pulse_shares_waveform(self):
        w = PulseWaveform(1.0, 2.0, 3.0, duration=1.0)
        ps = PulseSet.one_pulse(w)
        assert ps.omega1 is ps.omega2
        assert ps.mode == "one-pulse"
        assert ps.n_params == 3

    def test_two_pulse_requires_common_duration(self):
        w1 = PulseWaveform(1.0, 0.0, 0.0, duration=1.0)
        w2 = PulseWaveform(1.0, 0.0, 0.0, duration=1.2)
        with pytest.raises(ValueError):
            PulseSet.two_pulse(w1, w2)

    def test_from_params_shapes(self):
        ps = PulseSet.from_params([1, 2, 3], 1.0, "one-pulse")
        assert ps.omega1.a_sin == 3.0
        ps = PulseSet.from_params([1, 2, 3, 4, 5, 6], 1.0, "two-pulse")
        assert ps.omega2.a0 == 4.0
        assert ps.n_params == 6
        with pytest.raises(ValueError):
            PulseSet.from_params([1, 2], 1.0, "one-pulse")
        with pytest.raises(ValueError):
            PulseSet.from_params([1, 2, 3], 1.0, "two-pulse")

    def test_from_mhz(self):
        ps = PulseSet.from_mhz((1, 0, 0), (0, 1, 0), 1.0)
        assert ps.omega1.a0 == pytest.approx(2 * np.pi)
        assert ps.omega2.a_cos == pytest.approx(2 * np.pi)
