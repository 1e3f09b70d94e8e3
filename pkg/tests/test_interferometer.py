"""Closed-form interferometer algebra and its period-doubling signature."""

import numpy as np
import pytest

from pairdyn.experiments import dominant_cycles
from pairdyn.interferometer import (BOUND_PAIR, INDEPENDENT_PAIR, MODES,
                                    SINGLE, mzi_amplitudes)


def test_single_particle_fringes():
    phi = np.linspace(0.0, 2.0 * np.pi, 97)
    probs = mzi_amplitudes(SINGLE, phi).probabilities()
    assert np.allclose(probs["D1"], np.cos(phi / 2.0) ** 2, atol=1e-12)
    assert np.allclose(probs["D2"], np.sin(phi / 2.0) ** 2, atol=1e-12)
    assert np.allclose(probs["D1"] + probs["D2"], 1.0, atol=1e-12)


def test_independent_pair_factorizes_and_normalizes():
    phi = np.linspace(0.0, 2.0 * np.pi, 33)
    single = mzi_amplitudes(SINGLE, phi).probabilities()
    pair = mzi_amplitudes(INDEPENDENT_PAIR, phi).probabilities()
    assert np.allclose(pair["D1xD1"], single["D1"] ** 2, atol=1e-12)
    assert np.allclose(pair["D1xD2"], single["D1"] * single["D2"],
                       atol=1e-12)
    total = sum(pair.values())
    assert np.allclose(total, 1.0, atol=1e-12)


def test_bound_pair_coincidence_has_half_period():
    phi = np.linspace(0.0, 2.0 * np.pi, 65)
    bound = mzi_amplitudes(BOUND_PAIR, phi).probabilities()["D1xD1"]
    assert np.allclose(bound, 0.25 * np.cos(phi) ** 2, atol=1e-12)
    # cos^2(phi) repeats with period pi: shifting by half the window
    # reproduces the curve, which independent pairs do not do.
    assert np.allclose(bound[:32], bound[32:64], atol=1e-12)
    independent = mzi_amplitudes(INDEPENDENT_PAIR,
                                 phi).probabilities()["D1xD1"]
    assert not np.allclose(independent[:32], independent[32:64], atol=1e-2)


def test_scalar_phase_returns_plain_complex():
    amps = mzi_amplitudes(SINGLE, 0.7).amplitudes
    assert all(isinstance(v, complex) for v in amps.values())
    assert abs(abs(amps["D1"]) ** 2 - np.cos(0.35) ** 2) < 1e-12


def test_unknown_mode_rejected():
    assert set(MODES) == {"single", "independent_pair", "bound_pair"}
    with pytest.raises(ValueError):
        mzi_amplitudes("triple", 0.0)


def test_cycle_counter_sees_the_period_doubling():
    # Sampled over one 2*pi sweep, single-particle fringes complete one
    # cycle while the bound-pair coincidence completes two.
    phi = np.linspace(0.0, 2.0 * np.pi, 64, endpoint=False)
    single = mzi_amplitudes(SINGLE, phi).probabilities()["D1"]
    bound = mzi_amplitudes(BOUND_PAIR, phi).probabilities()["D1xD1"]
    assert dominant_cycles(single) == 1
    assert dominant_cycles(bound) == 2


def test_cycle_counter_on_synthetic_signals():
    x = np.linspace(0.0, 1.0, 128, endpoint=False)
    for n in (1, 2, 3, 7):
        assert dominant_cycles(np.cos(2.0 * np.pi * n * x) + 5.0) == n
    with pytest.raises(ValueError):
        dominant_cycles([1.0, 2.0, 3.0])
