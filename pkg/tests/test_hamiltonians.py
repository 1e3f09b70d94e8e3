"""Operators on the pair Hilbert space and the momentum-space picture."""

import numpy as np

from pairdyn.hamiltonians import (MomentumState, build_psi_K, h_free,
                                  h_linear_tilt, h_onsite_interaction,
                                  h_region_phase, momentum_grid,
                                  momentum_index, phase_region,
                                  region_counts, single_particle_hopping,
                                  to_momentum, to_momentum_operator,
                                  to_position)
from pairdyn.lattice import LatticeState, point_pair


def _random_state(rng, d):
    amplitudes = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    amplitudes /= np.linalg.norm(amplitudes)
    return LatticeState(d=d, amplitudes=amplitudes)


def test_single_particle_hopping_structure():
    h = single_particle_hopping(6)
    assert np.allclose(h, h.conj().T)
    assert np.allclose(np.diag(h), 0.0)
    assert h[0, 1] == -1.0 and h[1, 0] == -1.0
    assert h[0, 5] == -1.0
    shift = np.roll(np.eye(6), 1, axis=0)
    assert np.linalg.norm(h @ shift - shift @ h) < 1e-12


def test_h_free_spectrum_matches_cosine_dispersion():
    for d in (4, 6, 40):
        k = momentum_grid(d)
        expected = np.sort((-2.0 * np.cos(k)[:, None]
                            - 2.0 * np.cos(k)[None, :]).ravel())
        eigenvalues = np.linalg.eigvalsh(h_free(d).matrix)
        assert np.max(np.abs(eigenvalues - expected)) < 1e-10
        assert np.isclose(eigenvalues[0], -4.0)


def test_h_free_small_d_rejected():
    try:
        h_free(1)
    except ValueError:
        pass
    else:
        raise AssertionError("d < 2 must be rejected")


def test_h_free_commutes_with_pair_translation():
    d = 8
    shift = np.roll(np.eye(d), 1, axis=0)
    pair_shift = np.kron(shift, shift)
    h = h_free(d).matrix
    assert np.linalg.norm(h @ pair_shift - pair_shift @ h) < 1e-12


def test_onsite_interaction_is_diagonal_on_coincidences():
    h = h_onsite_interaction(3, -2.5).matrix
    assert np.allclose(h, np.diag(np.diag(h)))
    diag = np.real(np.diag(h)).reshape(3, 3)
    assert np.allclose(np.diag(diag), -2.5)
    assert np.allclose(diag - np.diag(np.diag(diag)), 0.0)
    assert np.allclose(h_onsite_interaction(5, 0.0).matrix, 0.0)


def test_region_counts_and_phase_generator():
    d = 8
    region = phase_region(d)
    assert np.array_equal(region, [5, 6])
    counts = region_counts(d)
    assert set(np.unique(counts)) == {0.0, 1.0, 2.0}
    both_inside = (5 - 1) * d + (6 - 1)
    assert counts[both_inside] == 2.0
    one_inside = (5 - 1) * d + (2 - 1)
    assert counts[one_inside] == 1.0
    outside = (1 - 1) * d + (8 - 1)
    assert counts[outside] == 0.0
    h = h_region_phase(d).matrix
    assert np.allclose(h, np.diag(counts))


def test_linear_tilt_diagonal_and_origin_shift():
    d = 6
    eta = 0.4
    h = h_linear_tilt(d, eta).matrix
    assert np.allclose(h, np.diag(np.diag(h)))
    x = np.arange(1, d + 1, dtype=float)
    expected = eta * (x[:, None] + x[None, :]).ravel()
    assert np.allclose(np.real(np.diag(h)), expected)
    shifted = np.diag(eta * ((x + 3.0)[:, None] + (x + 3.0)[None, :]).ravel())
    difference = shifted - h
    assert np.allclose(difference, difference[0, 0] * np.eye(d * d))
    assert np.allclose(h_linear_tilt(d, 0.0).matrix, 0.0)


def test_momentum_round_trip_and_unitarity():
    rng = np.random.default_rng(13)
    for _ in range(20):
        d = 2 * int(rng.integers(2, 8))
        state = _random_state(rng, d)
        mom = to_momentum(state)
        assert np.isclose(np.linalg.norm(mom.amplitudes), 1.0, atol=1e-12)
        back = to_position(mom)
        assert np.allclose(back.amplitudes, state.amplitudes, atol=1e-12)


def test_plane_wave_maps_to_single_momentum_mode():
    d = 10
    k = momentum_grid(d)
    target = 3
    x = np.arange(1, d + 1)
    wave = np.exp(1j * k[target] * x) / np.sqrt(d)
    state = LatticeState(d=d, amplitudes=np.outer(wave, wave))
    mom = to_momentum(state).amplitudes
    power = np.abs(mom) ** 2
    assert np.isclose(power[target, target], 1.0, atol=1e-12)
    assert np.isclose(power.sum(), 1.0, atol=1e-12)


def test_uniform_particle_sits_at_zero_momentum():
    d = 8
    flat = np.ones(d) / np.sqrt(d)
    state = LatticeState(d=d, amplitudes=np.outer(flat, flat))
    mom = to_momentum(state).amplitudes
    zero = momentum_index(d, 0.0)
    assert np.isclose(np.abs(mom[zero, zero]) ** 2, 1.0, atol=1e-12)


def test_free_hamiltonian_diagonal_in_momentum_basis():
    d = 8
    diag = to_momentum_operator(h_free(d))
    off = diag - np.diag(np.diag(diag))
    assert np.max(np.abs(off)) < 1e-10
    k = momentum_grid(d)
    expected = (-2.0 * np.cos(k)[:, None] - 2.0 * np.cos(k)[None, :]).ravel()
    assert np.allclose(np.sort(np.real(np.diag(diag))), np.sort(expected),
                       atol=1e-10)


def test_pair_momentum_states_are_interaction_eigenstates():
    d = 12
    gamma = -2.5
    h_int = h_onsite_interaction(d, gamma).matrix
    for K in momentum_grid(d) * 2.0:
        psi = build_psi_K(d, K).flat()
        assert np.isclose(np.linalg.norm(psi), 1.0, atol=1e-12)
        residual = np.linalg.norm(h_int @ psi - gamma * psi)
        assert residual < 1e-10


def test_pair_momentum_is_brillouin_periodic():
    d = 10
    for K in (0.0, 0.6 * np.pi, -0.4 * np.pi):
        a = build_psi_K(d, K).flat()
        b = build_psi_K(d, K + 2.0 * np.pi).flat()
        assert np.max(np.abs(a - b)) < 1e-12


def test_opposite_edge_momenta_bunch_identically():
    d = 8
    gamma = -1.0
    h_int = h_onsite_interaction(d, gamma).matrix

    def momentum_point_pair(k):
        x = np.arange(1, d + 1)
        wave = np.exp(1j * k * x) / np.sqrt(d)
        return np.kron(wave, wave)

    psi_zero = h_int @ momentum_point_pair(0.0)
    psi_edge = h_int @ momentum_point_pair(np.pi)
    target = (gamma / np.sqrt(d)) * build_psi_K(d, 0.0).flat()
    assert np.linalg.norm(psi_zero - target) < 1e-10
    assert np.linalg.norm(psi_edge - target) < 1e-10


def test_tilt_translates_pair_momentum():
    d = 8
    eta = 0.4
    tilt = h_linear_tilt(d, eta).matrix
    energies, vectors = np.linalg.eigh(tilt)
    t = np.pi / (eta * d)  # shifts each single-particle momentum by one bin
    K = 0.5 * np.pi
    psi = build_psi_K(d, K).flat()
    evolved = vectors @ (np.exp(-1j * energies * t)
                         * (vectors.conj().T @ psi))
    target = build_psi_K(d, K - 2.0 * eta * t).flat()
    fidelity = np.abs(np.vdot(target, evolved))
    assert fidelity > 1.0 - 1e-9


def test_momentum_state_round_trip_type():
    d = 6
    state = point_pair(d, 2, 5)
    mom = to_momentum(state)
    assert isinstance(mom, MomentumState)
    assert mom.amplitudes.shape == (d, d)
