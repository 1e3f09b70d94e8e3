"""Dense two-particle Hamiltonians on the ring, and the momentum picture.

Operators act on the flattened pair basis |x1, x2> with x1 major (the same
layout as ``LatticeState.flat``).  All builders return real symmetric
matrices; sums of builders stay Hermitian term by term.

The momentum grid is k_n = -pi + 2 pi n / d for n = 1..d (even d), and the
mode transform follows a_x = d^{-1/2} sum_k e^{i k x} a_k.
"""

from dataclasses import dataclass

import numpy as np

from .lattice import LatticeState


@dataclass(frozen=True)
class HamiltonianOperator:
    """A dense Hermitian operator on the two-particle sector.

    ``terms`` records which builders contributed, e.g.
    (("free_hopping",), ("onsite_interaction", -10.0)).
    """

    d: int
    terms: tuple
    matrix: np.ndarray

    def __add__(self, other):
        if not isinstance(other, HamiltonianOperator):
            return NotImplemented
        if other.d != self.d:
            raise ValueError(f"dimension mismatch: d={self.d} vs d={other.d}")
        return HamiltonianOperator(d=self.d, terms=self.terms + other.terms,
                                   matrix=self.matrix + other.matrix)


def single_particle_hopping(d: int) -> np.ndarray:
    """d x d ring hopping matrix, amplitude -1 per bond (plain ndarray)."""
    h = np.zeros((d, d))
    for x in range(d):
        y = (x + 1) % d
        h[y, x] -= 1.0
        h[x, y] -= 1.0
    return h


def h_free(d: int) -> HamiltonianOperator:
    """Nearest-neighbour hopping of both particles, amplitude -1 per bond.

    Eigenvalues are -2 cos(2 pi k1 / d) - 2 cos(2 pi k2 / d); on d = 2 the
    two bonds between the sites coincide, doubling the matrix element.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    h1 = single_particle_hopping(d)
    eye = np.eye(d)
    matrix = np.kron(h1, eye) + np.kron(eye, h1)
    return HamiltonianOperator(d=d, terms=(("free_hopping",),), matrix=matrix)


def h_onsite_interaction(d: int, gamma: float) -> HamiltonianOperator:
    """Contact interaction: energy gamma whenever the particles coincide."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    diag = np.zeros(d * d)
    for x in range(d):
        diag[x * d + x] = gamma
    return HamiltonianOperator(d=d, terms=(("onsite_interaction", float(gamma)),),
                               matrix=np.diag(diag))


def phase_region(d: int) -> np.ndarray:
    """Sites d/2+1 .. 3d/4 (1-based) forming the phase arm of the ring."""
    if d % 4:
        raise ValueError(f"d must be divisible by 4, got {d}")
    return np.arange(d // 2 + 1, 3 * d // 4 + 1)


def region_counts(d: int) -> np.ndarray:
    """Number of particles inside the phase region for each flat basis state."""
    in_region = np.zeros(d)
    in_region[phase_region(d) - 1] = 1.0
    return (in_region[:, None] + in_region[None, :]).reshape(-1)


def h_region_phase(d: int) -> HamiltonianOperator:
    """Counts how many of the two particles sit in the phase region.

    Diagonal with eigenvalues {0, 1, 2}; exponentiating it with a phase
    implements the interferometer's phase arm.
    """
    return HamiltonianOperator(d=d, terms=(("region_phase",),),
                               matrix=np.diag(region_counts(d)))


def h_linear_tilt(d: int, eta: float) -> HamiltonianOperator:
    """Linear potential eta * (x1 + x2) with site coordinates 1..d.

    The potential is not periodic: it jumps by eta*d across the seam
    between sites d and 1.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    x = np.arange(1, d + 1, dtype=float)
    diag = (x[:, None] + x[None, :]).reshape(-1) * eta
    return HamiltonianOperator(d=d, terms=(("linear_tilt", float(eta)),),
                               matrix=np.diag(diag))


# ---------------------------------------------------------------------------
# momentum picture


def momentum_grid(d: int) -> np.ndarray:
    """Momenta -pi + 2 pi n / d, n = 1..d, ending exactly at +pi."""
    if d % 2:
        raise ValueError(f"momentum grid needs even d, got {d}")
    return 2.0 * np.pi * np.arange(1, d + 1) / d - np.pi


@dataclass
class MomentumState:
    """Pair amplitudes over the momentum grid, indexed like momentum_grid."""

    d: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (self.d, self.d):
            raise ValueError("momentum amplitude grid shape mismatch")

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))


def _mode_matrix(d):
    k = momentum_grid(d)[:, None]
    x = np.arange(1, d + 1)[None, :]
    return np.exp(-1j * k * x) / np.sqrt(d)


def to_momentum(state: LatticeState) -> MomentumState:
    """Unitary transform of a position-basis pair state to momentum space."""
    f = _mode_matrix(state.d)
    return MomentumState(d=state.d, amplitudes=f @ state.amplitudes @ f.T)


def to_position(mstate: MomentumState) -> LatticeState:
    """Inverse of :func:`to_momentum`."""
    f = _mode_matrix(mstate.d)
    g = f.conj().T
    return LatticeState(d=mstate.d, amplitudes=g @ mstate.amplitudes @ g.T)


def momentum_index(d: int, k: float) -> int:
    """Grid index of a momentum value, wrapped into (-pi, pi].

    Raises if k is not grid-commensurate to within 1e-9 of a grid step.
    """
    n = k * d / (2.0 * np.pi) + d / 2  # k_n = 2 pi n / d - pi
    n_int = int(round(n))
    if abs(n - n_int) > 1e-9:
        raise ValueError(f"momentum {k!r} is not on the 2 pi/d grid")
    return (n_int - 1) % d  # 0-based index of k_n, n = 1..d


def to_momentum_operator(op: HamiltonianOperator) -> np.ndarray:
    """Matrix of a pair operator in the two-particle momentum basis.

    Rows and columns are flattened (k1, k2) pairs ordered like
    momentum_grid; for the on-site interaction the result is gamma/d on
    every total-momentum-conserving entry (mod 2 pi) and zero elsewhere.
    """
    f = _mode_matrix(op.d)
    both = np.kron(f, f)
    return both @ op.matrix @ both.conj().T


def build_psi_K(d: int, K: float) -> LatticeState:
    """Uniform superposition of pair momenta with total momentum K.

    The state d^{-1/2} sum_q |k+q, l-q> with k + l = K is an exact
    eigenstate of the on-site interaction with eigenvalue gamma, for every
    grid-commensurate K; K and K + 2 pi build the identical state.
    """
    n_K = K * d / (2.0 * np.pi)
    n_int = int(round(n_K))
    if abs(n_K - n_int) > 1e-9:
        raise ValueError(f"total momentum {K!r} is not a sum of grid momenta")
    amps = np.zeros((d, d), dtype=complex)
    for n1 in range(d):
        n2 = (n_int - (n1 + 1) - 1) % d  # grid labels n are 1-based
        amps[n1, n2] = 1.0 / np.sqrt(d)
    return to_position(MomentumState(d=d, amplitudes=amps))
