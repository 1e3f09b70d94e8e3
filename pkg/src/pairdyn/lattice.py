"""Two-particle states on a ring of d sites.

Sites are labelled 1..d and the two (distinguishable) particles carry a
joint amplitude grid psi[x1-1, x2-1].  No exchange symmetrization is
applied.  The double-Gaussian builder follows the lattice convention in
which ``sigma`` is the width of the sum coordinate (x1 + x2) and
``big_sigma`` the width of the difference coordinate (x1 - x2); note that
the continuum formulas in :mod:`pairdyn.continuum` attach sigma to the
difference coordinate instead.
"""

from dataclasses import dataclass, field

import numpy as np

SQRT2 = np.sqrt(2.0)

# fraction of probability allowed within one site of the wrap seam before
# a state is flagged as wrapping around the ring
WRAP_TOLERANCE = 1e-6


def minimal_image(values, period):
    """Displacements folded into [-period/2, period/2)."""
    values = np.asarray(values, dtype=float)
    return (values + period / 2.0) % period - period / 2.0


@dataclass
class LatticeState:
    """Normalized joint amplitudes of a particle pair on a d-site ring."""

    d: int
    amplitudes: np.ndarray
    warnings: tuple = field(default_factory=tuple)

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (self.d, self.d):
            raise ValueError(
                f"amplitude grid must be ({self.d}, {self.d}), "
                f"got {self.amplitudes.shape}")

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def flat(self) -> np.ndarray:
        """Row-major (x1-major) flattened amplitude vector."""
        return self.amplitudes.reshape(-1)


def _site_coordinates(d):
    x = np.arange(1, d + 1, dtype=float)
    return x[:, None], x[None, :]


def double_gaussian(d: int, sigma: float, big_sigma: float, center_sum: float,
                    boost_k1: float = 0.0, boost_k2: float = 0.0) -> LatticeState:
    """Double-Gaussian pair state on the ring.

    Amplitudes are the ring periodization of

        exp(-(x1 + x2 - center_sum)^2 / (4 sigma^2))
        * exp(-(x1 - x2)^2 / (4 big_sigma^2)),

    summed over the nearest periodic image of each particle coordinate
    separately, then multiplied by exp(i (boost_k1 x1 + boost_k2 x2)) on
    the fundamental domain and normalized.  Shifting a coordinate by d
    moves x1 + x2 and x1 - x2 together, so pairs glued across the seam
    keep their weight and sigma == big_sigma still factorizes into an
    exact product of two single-particle ring Gaussians.  States whose
    tails wrap appreciably are flagged in ``warnings``, not rejected.
    """
    if d < 4:
        raise ValueError(f"d must be >= 4, got {d}")
    if not sigma > 0 or not big_sigma > 0:
        raise ValueError("sigma and big_sigma must be positive")
    x1, x2 = _site_coordinates(d)
    envelope = np.zeros((d, d))
    main = None
    for m1 in (-1, 0, 1):
        for m2 in (-1, 0, 1):
            w_sum = x1 + x2 + (m1 + m2) * d - center_sum
            w_diff = x1 - x2 + (m1 - m2) * d
            term = np.exp(-w_sum ** 2 / (4.0 * sigma ** 2)
                          - w_diff ** 2 / (4.0 * big_sigma ** 2))
            envelope = envelope + term
            if m1 == 0 and m2 == 0:
                main = term
    total = np.sum(envelope ** 2)
    if not total > 0:
        raise ValueError("state has zero norm; widths too small for the grid")

    warnings = ()
    if np.sum((envelope - main) ** 2) / total > WRAP_TOLERANCE:
        warnings = ("wraparound: periodic-image weight exceeds 1e-6 of the "
                    "norm",)

    amps = envelope * np.exp(1j * (boost_k1 * x1 + boost_k2 * x2))
    amps /= np.sqrt(total)
    return LatticeState(d=d, amplitudes=amps, warnings=warnings)


def point_pair(d: int, x1: int, x2: int) -> LatticeState:
    """Product state with the particles pinned at sites x1 and x2."""
    if not (1 <= x1 <= d and 1 <= x2 <= d):
        raise ValueError(f"sites must lie in 1..{d}, got ({x1}, {x2})")
    amps = np.zeros((d, d), dtype=complex)
    amps[x1 - 1, x2 - 1] = 1.0
    return LatticeState(d=d, amplitudes=amps)


def uniform_bunched(d: int) -> LatticeState:
    """Equal-weight superposition of the d doubly occupied sites."""
    amps = np.eye(d, dtype=complex) / np.sqrt(d)
    return LatticeState(d=d, amplitudes=amps)


@dataclass
class ReducedDensity:
    """Single-particle density matrix obtained by a partial trace."""

    d: int
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        if self.matrix.shape != (self.d, self.d):
            raise ValueError("density matrix shape mismatch")


def reduce_state(state: LatticeState, which: str = "first") -> ReducedDensity:
    """Partial trace of the pair state over the other particle.

    ``which`` selects the register that is kept ("first" or "second").
    The result is Hermitian, positive semidefinite and has unit trace
    whenever the input is normalized.
    """
    psi = state.amplitudes
    if which == "first":
        rho = psi @ psi.conj().T
    elif which == "second":
        rho = psi.T @ psi.conj()
    else:
        raise ValueError(f"which must be 'first' or 'second', got {which!r}")
    return ReducedDensity(d=state.d, matrix=rho)


def purity_of(rho: ReducedDensity) -> float:
    """Tr rho^2 of a reduced density matrix."""
    m = rho.matrix
    return float(np.real(np.trace(m @ m)))


def entropy_of(rho: ReducedDensity, cutoff: float = 1e-14) -> float:
    """Von Neumann entropy -sum(p ln p), dropping eigenvalues below cutoff."""
    p = np.linalg.eigvalsh(rho.matrix)
    p = p[p > cutoff]
    return float(-np.sum(p * np.log(p)))


def joint_density(state: LatticeState) -> np.ndarray:
    """|psi|^2 on the site grid, rows indexed by x1."""
    return np.abs(state.amplitudes) ** 2


def _circular_spread(values, probabilities, period):
    """Standard deviation of a periodic coordinate about its circular mean."""
    theta = 2.0 * np.pi * values / period
    mean_vec = np.sum(probabilities * np.exp(1j * theta))
    mean = period * np.angle(mean_vec) / (2.0 * np.pi)
    disp = minimal_image(values - mean, period)
    return float(np.sqrt(np.sum(probabilities * disp ** 2)))


def marginal_variances(state: LatticeState):
    """Spreads (standard deviations) of the scaled sum and difference
    coordinates (x1 +- x2)/sqrt(2).

    Both coordinates are treated as periodic, the sum with period 2d and
    the difference with period d, and the spread is taken about the
    circular mean.  The difference spread is exactly invariant under
    rigid translations of the packet around the ring.  The sum spread is
    invariant only while the packet stays clear of the seam between
    sites d and 1: when one particle wraps and the other does not,
    x1 + x2 jumps by d, which is half the sum coordinate's period, so a
    packet straddling the seam splits into two lumps and its sum spread
    is inflated.  Centre packets away from the seam when this spread is
    the quantity of interest.

    Returns
    -------
    (float, float)
        (sum spread, difference spread).
    """
    rho = joint_density(state)
    x1, x2 = _site_coordinates(state.d)
    s = (x1 + x2).ravel()
    r = (x1 - x2).ravel()
    p = rho.ravel()
    spread_sum = _circular_spread(s, p, 2 * state.d) / SQRT2
    spread_diff = _circular_spread(r, p, state.d) / SQRT2
    return spread_sum, spread_diff


def joint_density_csv(state: LatticeState, path):
    """Write |psi|^2 as a CSV grid; row = x1, column = x2."""
    rho = joint_density(state)
    header = f"joint position density, d={state.d}, rows=x1, columns=x2"
    np.savetxt(path, rho, delimiter=",", fmt="%.17g", header=header)
