"""Unitary evolution: spectral propagator, Fourier cross-check, phase
imprinting, and recurrence search."""

import numpy as np
import pytest

from pairdyn.detectors import DetectorBank
from pairdyn.hamiltonians import (HamiltonianOperator, h_free,
                                  h_onsite_interaction,
                                  single_particle_hopping)
from pairdyn.lattice import (LatticeState, double_gaussian,
                             marginal_variances, point_pair, reduce_state)
from pairdyn.propagator import (RecurrenceNotFoundError, SpectralPropagator,
                                apply_phase, find_recurrence_time,
                                free_evolve_fourier)


def _random_state(rng, d):
    amps = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    amps /= np.linalg.norm(amps)
    return LatticeState(d=d, amplitudes=amps)


def _interacting_propagator(d, gamma):
    h = h_free(d).matrix + h_onsite_interaction(d, gamma).matrix
    op = HamiltonianOperator(d=d, terms=(("free",), ("onsite", gamma)),
                             matrix=h)
    return SpectralPropagator.from_hamiltonian(op), h


def test_unitarity_and_energy_conservation():
    d = 6
    prop, h = _interacting_propagator(d, -2.5)
    rng = np.random.default_rng(3)
    for _ in range(100):
        state = _random_state(rng, d)
        t = float(rng.uniform(-6.0, 6.0))
        evolved = prop.evolve(state, t)
        assert abs(evolved.norm() - 1.0) < 1e-10
        e0 = np.vdot(state.flat(), h @ state.flat()).real
        e1 = np.vdot(evolved.flat(), h @ evolved.flat()).real
        assert abs(e1 - e0) < 1e-9 * max(1.0, abs(e0))


def test_zero_time_is_identity():
    d = 6
    prop, _ = _interacting_propagator(d, -2.5)
    rng = np.random.default_rng(4)
    state = _random_state(rng, d)
    evolved = prop.evolve(state, 0.0)
    assert np.max(np.abs(evolved.amplitudes - state.amplitudes)) < 1e-12


def test_eigenstate_populations_stationary():
    d = 6
    prop, _ = _interacting_propagator(d, -2.5)
    rng = np.random.default_rng(5)
    state = _random_state(rng, d)
    pops0 = np.abs(prop.eigenvectors.conj().T @ state.flat()) ** 2
    for t in (0.7, 3.1, 12.9):
        evolved = prop.evolve(state, t)
        pops = np.abs(prop.eigenvectors.conj().T @ evolved.flat()) ** 2
        assert np.max(np.abs(pops - pops0)) < 1e-12


def test_spectral_matches_fourier_for_free_hopping():
    d = 8
    prop = SpectralPropagator.from_hamiltonian(h_free(d))
    rng = np.random.default_rng(6)
    for t in (0.3, 1.7, -2.4):
        state = _random_state(rng, d)
        a = prop.evolve(state, t).amplitudes
        b = free_evolve_fourier(state, t).amplitudes
        assert np.max(np.abs(a - b)) < 1e-10


def test_reconstruct_recovers_matrix():
    prop, h = _interacting_propagator(6, -1.5)
    assert np.max(np.abs(prop.reconstruct() - h)) < 1e-10


def test_ring_size_mismatch_rejected():
    prop = SpectralPropagator.from_hamiltonian(h_free(6))
    state = _random_state(np.random.default_rng(0), 8)
    with pytest.raises(ValueError):
        prop.evolve(state, 1.0)


def test_non_hermitian_rejected():
    m = np.zeros((16, 16), dtype=complex)
    m[0, 1] = 1.0
    op = HamiltonianOperator(d=4, terms=(("broken",),), matrix=m)
    with pytest.raises(ValueError):
        SpectralPropagator.from_hamiltonian(op)


def test_spread_reaches_sqrt2_at_lifetime():
    # Width-4 packets have lifetime t = m*w^2 with effective mass 1/2,
    # so both scaled coordinates should spread by sqrt(2) at t = 8.
    state = double_gaussian(40, 4.0, 4.0, 40.0)
    before = marginal_variances(state)
    after = marginal_variances(free_evolve_fourier(state, 8.0))
    for ratio in (after[0] / before[0], after[1] / before[1]):
        assert abs(ratio - np.sqrt(2.0)) < 0.02 * np.sqrt(2.0)


def test_free_hamiltonian_keeps_product_states_factorized():
    d = 6
    rng = np.random.default_rng(7)
    a = rng.normal(size=d) + 1j * rng.normal(size=d)
    b = rng.normal(size=d) + 1j * rng.normal(size=d)
    a /= np.linalg.norm(a)
    b /= np.linalg.norm(b)
    state = LatticeState(d=d, amplitudes=np.outer(a, b))
    prop = SpectralPropagator.from_hamiltonian(h_free(d))
    evolved = prop.evolve(state, 1.3)

    h1 = single_particle_hopping(d)
    energies, vectors = np.linalg.eigh(h1)
    u1 = (vectors * np.exp(-1j * energies * 1.3)) @ vectors.conj().T
    a_t = u1 @ a
    rho = reduce_state(evolved, which="first").matrix
    assert np.max(np.abs(rho - np.outer(a_t, a_t.conj()))) < 1e-10


def test_apply_phase_identities():
    d = 8
    rng = np.random.default_rng(8)
    state = _random_state(rng, d)
    for phi in (0.0, 2.0 * np.pi):
        out = apply_phase(state, phi)
        assert np.max(np.abs(out.amplitudes - state.amplitudes)) < 1e-12
    # Sites 5 and 6 lie in the phase region of an 8-site ring: a pair with
    # both particles inside picks up exp(2 i phi), one inside exp(i phi).
    both = point_pair(d, 5, 6)
    out = apply_phase(both, np.pi / 2)
    assert np.max(np.abs(out.amplitudes + both.amplitudes)) < 1e-12
    one = point_pair(d, 5, 1)
    out = apply_phase(one, np.pi / 2)
    assert np.max(np.abs(out.amplitudes - 1j * one.amplitudes)) < 1e-12


def test_two_site_toy_recurrence():
    # On a 2-site ring the seam doubles the hopping bond, so the pair
    # spectrum is {-4, 0, 0, 4} and the count signal revives with period
    # pi/2; the search returns half of that first revival.
    prop = SpectralPropagator.from_hamiltonian(h_free(2))
    assert np.allclose(np.sort(prop.eigenvalues), [-4.0, 0.0, 0.0, 4.0],
                       atol=1e-12)
    bank = DetectorBank(2, 1)
    state = point_pair(2, 1, 1)
    half = find_recurrence_time(prop, state, bank, bank.cell_containing(1),
                                t_max=5.0)
    assert abs(2.0 * half - np.pi / 2.0) < 2e-3


def test_recurrence_failure_carries_best_candidate():
    prop = SpectralPropagator.from_hamiltonian(h_free(8))
    bank = DetectorBank(8, 2)
    state = point_pair(8, 1, 2)
    with pytest.raises(RecurrenceNotFoundError) as excinfo:
        find_recurrence_time(prop, state, bank, bank.cell_containing(1),
                             t_max=0.75)
    err = excinfo.value
    assert err.best_time > 0.0
    assert 0.0 <= err.best_value <= 2.0
    assert "best candidate" in str(err)


def test_invalid_scan_parameters_rejected():
    prop = SpectralPropagator.from_hamiltonian(h_free(8))
    bank = DetectorBank(8, 2)
    state = point_pair(8, 1, 2)
    for kwargs in ({"t_max": 0.0}, {"t_max": 5.0, "coarse_step": -1.0}):
        with pytest.raises(ValueError):
            find_recurrence_time(prop, state, bank, 0, **kwargs)


def test_evolution_is_deterministic():
    d = 6
    prop, _ = _interacting_propagator(d, -2.5)
    state = _random_state(np.random.default_rng(9), d)
    first = prop.evolve(state, 2.7).amplitudes
    second = prop.evolve(state, 2.7).amplitudes
    assert np.array_equal(first, second)
