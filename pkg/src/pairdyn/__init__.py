"""Two-particle quantum dynamics on a line and on a ring lattice.

Closed-form results for correlated Gaussian pairs (free spreading,
thermal decay of the interparticle correlation) live in
:mod:`pairdyn.continuum`; exact lattice simulations (spectral propagator,
coarse detectors, interferometry, tilted-ring oscillations) live in the
remaining modules.  The ``pairdyn`` console script drives the bundled
experiments and writes their CSV tables.
"""

from .continuum import (GaussianPairParams, cm_spread_at_lifetime,
                        critical_temperature, free_spread, lifetime,
                        maxwell_weights, purity, thermal_joint_density,
                        thermal_marginal, thermal_momentum_grid,
                        thermal_relative_spread)
from .detectors import (DetectorBank, cross_cell_mass,
                        joint_detector_expectation, joint_point_probability,
                        separate_density_expectation,
                        separate_detector_expectation, site_density)
from .experiments import (ExperimentResult, bloch_initial_state,
                          cached_propagator, check_entropy_conservation,
                          check_factorized_approximation,
                          check_no_signalling, dominant_cycles,
                          mzi_initial_state, mzi_snapshots, run_bloch,
                          run_free_spread, run_mzi, run_thermalization)
from .hamiltonians import (HamiltonianOperator, MomentumState, build_psi_K,
                           h_free, h_linear_tilt, h_onsite_interaction,
                           h_region_phase, momentum_grid, momentum_index,
                           phase_region, region_counts,
                           single_particle_hopping, to_momentum, to_position)
from .interferometer import MziAmplitudeSet, mzi_amplitudes
from .lattice import (LatticeState, ReducedDensity, double_gaussian,
                      entropy_of, joint_density, joint_density_csv,
                      marginal_variances, minimal_image, point_pair,
                      purity_of, reduce_state, uniform_bunched)
from .propagator import (RecurrenceNotFoundError, SpectralPropagator,
                         apply_phase, find_recurrence_time)

__version__ = "0.1.0"

__all__ = [
    "GaussianPairParams", "cm_spread_at_lifetime", "critical_temperature",
    "free_spread", "lifetime", "maxwell_weights", "purity",
    "thermal_joint_density", "thermal_marginal", "thermal_momentum_grid",
    "thermal_relative_spread",
    "DetectorBank", "cross_cell_mass", "joint_detector_expectation",
    "joint_point_probability", "separate_density_expectation",
    "separate_detector_expectation", "site_density",
    "ExperimentResult", "bloch_initial_state", "cached_propagator",
    "check_entropy_conservation", "check_factorized_approximation",
    "check_no_signalling", "dominant_cycles", "mzi_initial_state",
    "mzi_snapshots", "run_bloch", "run_free_spread", "run_mzi",
    "run_thermalization",
    "HamiltonianOperator", "MomentumState", "build_psi_K", "h_free",
    "h_linear_tilt", "h_onsite_interaction", "h_region_phase",
    "momentum_grid", "momentum_index", "phase_region", "region_counts",
    "single_particle_hopping", "to_momentum", "to_position",
    "MziAmplitudeSet", "mzi_amplitudes",
    "LatticeState", "ReducedDensity", "double_gaussian", "entropy_of",
    "joint_density", "joint_density_csv", "marginal_variances",
    "minimal_image", "point_pair", "purity_of", "reduce_state",
    "uniform_bunched",
    "RecurrenceNotFoundError", "SpectralPropagator", "apply_phase",
    "find_recurrence_time",
]
