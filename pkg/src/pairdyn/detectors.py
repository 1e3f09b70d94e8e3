"""Coarse-grained position detectors on the ring.

A :class:`DetectorBank` partitions the d sites into contiguous cells of
width delta.  The joint detector D_j fires when *both* particles sit in
cell j; the separate detector counts how many particles are there, so its
expectations sum to 2 over the bank.  An integer ``offset`` rotates the
cell boundaries, e.g. offset = -delta/2 centres cell j on site j*delta.
"""

from dataclasses import dataclass

import numpy as np

from .lattice import LatticeState, joint_density, reduce_state


@dataclass(frozen=True)
class DetectorBank:
    d: int
    delta: int
    offset: int = 0

    def __post_init__(self):
        if self.delta < 1 or self.d % self.delta:
            raise ValueError(
                f"cell width {self.delta} must divide d={self.d}")
        if self.offset != int(self.offset):
            raise ValueError("offset must be an integer number of sites")

    @classmethod
    def centered(cls, d: int, delta: int) -> "DetectorBank":
        """Bank with cell j centred on site j*delta; needs even delta."""
        if delta % 2:
            raise ValueError("centred banks need an even cell width")
        return cls(d=d, delta=delta, offset=-delta // 2)

    @property
    def n_cells(self) -> int:
        return self.d // self.delta

    def cell_sites(self, j: int) -> np.ndarray:
        """1-based sites of cell j, wrapped around the ring."""
        if not 0 <= j < self.n_cells:
            raise ValueError(f"cell index {j} outside 0..{self.n_cells - 1}")
        start = j * self.delta + self.offset
        return (np.arange(start, start + self.delta) % self.d) + 1

    def cell_containing(self, site: int) -> int:
        """Index of the cell that contains a given 1-based site."""
        if not 1 <= site <= self.d:
            raise ValueError(f"site {site} outside 1..{self.d}")
        return ((site - 1 - self.offset) % self.d) // self.delta


def joint_detector_expectation(state: LatticeState, bank: DetectorBank,
                               j: int) -> float:
    """Probability that both particles are inside cell j."""
    idx = bank.cell_sites(j) - 1
    rho = joint_density(state)
    return float(rho[np.ix_(idx, idx)].sum())


def separate_detector_expectation(state: LatticeState, bank: DetectorBank,
                                  j: int) -> float:
    """Expected number of particles (0..2) inside cell j.

    Equal to the sum of the two reduced-density occupations of the cell;
    summed over all cells it gives exactly 2.
    """
    idx = bank.cell_sites(j) - 1
    density = site_density(state)
    return float(density[idx].sum())


def joint_point_probability(state: LatticeState, x1: int, x2: int) -> float:
    """Probability of finding the particles exactly at sites (x1, x2)."""
    if not (1 <= x1 <= state.d and 1 <= x2 <= state.d):
        raise ValueError(f"sites must lie in 1..{state.d}, got ({x1}, {x2})")
    return float(np.abs(state.amplitudes[x1 - 1, x2 - 1]) ** 2)


def site_density(state: LatticeState) -> np.ndarray:
    """Total occupation <n_x> per site (first plus second particle).

    Index [x-1] holds site x; the array sums to 2.
    """
    rho = joint_density(state)
    return rho.sum(axis=1) + rho.sum(axis=0)


def separate_density_expectation(state: LatticeState, bank: DetectorBank,
                                 j: int) -> float:
    """Same as separate_detector_expectation but via the reduced densities.

    Kept as an independent code path for cross-validation.
    """
    idx = bank.cell_sites(j) - 1
    rho_a = reduce_state(state, "first").matrix
    rho_b = reduce_state(state, "second").matrix
    return float(np.real(np.trace(rho_a[np.ix_(idx, idx)])
                         + np.trace(rho_b[np.ix_(idx, idx)])))


def cross_cell_mass(state: LatticeState, bank: DetectorBank) -> float:
    """Probability that the particles occupy two different cells.

    Computed by direct summation over cross-cell site pairs, so together
    with the joint detectors it partitions unity exactly.
    """
    rho = joint_density(state)
    total = 0.0
    for j in range(bank.n_cells):
        idx = bank.cell_sites(j) - 1
        block = rho[idx, :].sum() - rho[np.ix_(idx, idx)].sum()
        total += block
    return float(total)
