"""Closed-form dynamics of a correlated pair of Gaussian wave packets.

Two equal-mass particles move freely on a line.  Their joint wave function
is Gaussian in the difference coordinate (x1 - x2), width ``sigma``, and in
the sum coordinate (x1 + x2), width ``big_sigma``:

    psi(x1, x2, 0) ~ exp(-(x1 - x2)^2 / (4 sigma^2))
                   * exp(-(x1 + x2 - c)^2 / (4 big_sigma^2))

Spreads are reported as standard deviations of the scaled coordinates
(x1 -+ x2)/sqrt(2), so at t = 0 they equal sigma/sqrt(2) and
big_sigma/sqrt(2).  All functions accept explicit ``mass``, ``hbar`` and
``kB`` so they work both in natural units and in SI.
"""

from dataclasses import dataclass

import numpy as np

SQRT2 = np.sqrt(2.0)


def _require_positive(**values):
    for name, value in values.items():
        if not value > 0:
            raise ValueError(f"{name} must be positive, got {value!r}")


@dataclass(frozen=True)
class GaussianPairParams:
    """Width, mass and boost parameters of a Gaussian pair state.

    ``boost_k1`` and ``boost_k2`` are the plane-wave boosts of the two
    particles; ``center_sum`` shifts the sum coordinate x1 + x2.
    """

    sigma: float
    big_sigma: float
    mass: float = 1.0
    hbar: float = 1.0
    kB: float = 1.0
    center_sum: float = 0.0
    boost_k1: float = 0.0
    boost_k2: float = 0.0

    def __post_init__(self):
        _require_positive(sigma=self.sigma, big_sigma=self.big_sigma,
                          mass=self.mass, hbar=self.hbar, kB=self.kB)


def free_spread(width: float, t, mass: float = 1.0, hbar: float = 1.0):
    """Standard deviation of a freely spreading Gaussian packet.

    For a packet exp(-x^2 / (2 width^2)) of a particle of mass ``mass`` the
    position spread after time ``t`` is

        (1/sqrt(2)) * sqrt(width^2 + (hbar t / (mass width))^2).

    The same law governs the scaled sum and difference coordinates of a
    free pair.  Even in t and strictly increasing for t > 0.

    Parameters
    ----------
    width : float
        Gaussian width parameter, > 0.
    t : float or ndarray
        Elapsed time, may be an array.
    """
    _require_positive(width=width, mass=mass, hbar=hbar)
    t = np.asarray(t, dtype=float)
    out = np.sqrt(width ** 2 + (hbar * t / (mass * width)) ** 2) / SQRT2
    return out if out.ndim else float(out)


def lifetime(sigma: float, mass: float = 1.0, hbar: float = 1.0) -> float:
    """Time mass*sigma^2/hbar after which the spread has grown by sqrt(2)."""
    _require_positive(sigma=sigma, mass=mass, hbar=hbar)
    return mass * sigma ** 2 / hbar


def purity(sigma: float, big_sigma: float) -> float:
    """Purity of either reduced single-particle state of the Gaussian pair.

    P = 2 sigma Sigma / (sigma^2 + Sigma^2).  Equals 1 iff the two widths
    coincide (product state) and is invariant under rescaling both widths.
    """
    _require_positive(sigma=sigma, big_sigma=big_sigma)
    return 2.0 * sigma * big_sigma / (sigma ** 2 + big_sigma ** 2)


def cm_spread_at_lifetime(sigma: float, big_sigma: float) -> float:
    """Sum-coordinate spread evaluated at the difference-coordinate lifetime.

    Algebraically equal to (delta/P) * sqrt(4 - 2 P^2) with
    delta = sigma/sqrt(2) and P the pair purity; both forms are exercised
    by the test suite.
    """
    _require_positive(sigma=sigma, big_sigma=big_sigma)
    return np.sqrt((big_sigma ** 4 + sigma ** 4) / big_sigma ** 2) / SQRT2


def thermal_relative_spread(sigma: float, t, temperature: float,
                            mass: float = 1.0, hbar: float = 1.0,
                            kB: float = 1.0):
    """Spread of the scaled difference coordinate in a thermal mixture.

    (1/sqrt(2)) * sqrt(sigma^2 + (hbar^2/(mass^2 sigma^2) + kB T / mass) t^2).
    Reduces to :func:`free_spread` at T = 0.
    """
    _require_positive(sigma=sigma, mass=mass, hbar=hbar, kB=kB)
    if temperature < 0:
        raise ValueError(f"temperature must be >= 0, got {temperature!r}")
    t = np.asarray(t, dtype=float)
    rate2 = (hbar / (mass * sigma)) ** 2 + kB * temperature / mass
    out = np.sqrt(sigma ** 2 + rate2 * t ** 2) / SQRT2
    return out if out.ndim else float(out)


def critical_temperature(sigma: float, mass: float = 1.0, hbar: float = 1.0,
                         kB: float = 1.0) -> float:
    """Temperature hbar^2/(mass kB sigma^2) above which thermal velocity
    spread overtakes quantum spreading within one lifetime."""
    _require_positive(sigma=sigma, mass=mass, hbar=hbar, kB=kB)
    return hbar ** 2 / (mass * kB * sigma ** 2)


def thermal_momentum_grid(n_max: int = 10, spacing: float = np.pi / 5) -> np.ndarray:
    """Symmetric discrete momentum set {0, +-spacing, ..., +-n_max*spacing}."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    n = np.arange(-n_max, n_max + 1)
    return n * spacing


def maxwell_weights(kset, temperature: float, hbar: float = 1.0,
                    kB: float = 1.0) -> np.ndarray:
    """Normalized Maxwell occupation weights over a discrete momentum set.

    weight(k) = exp(-(hbar k)^2 / (2 kB T)) / Z with Z summed over ``kset``
    exactly as given.  T = 0 concentrates all weight on the zero-momentum
    entries and is an error if none are present; T < 0 is an error.

    Returns
    -------
    ndarray
        Weights in the order of ``kset``; they sum to 1.
    """
    _require_positive(hbar=hbar, kB=kB)
    k = np.asarray(kset, dtype=float)
    if k.ndim != 1 or k.size == 0:
        raise ValueError("kset must be a non-empty 1d sequence")
    if temperature < 0:
        raise ValueError(f"temperature must be >= 0, got {temperature!r}")
    if temperature == 0:
        zero = k == 0.0
        if not zero.any():
            raise ValueError("T = 0 requires a zero-momentum entry in kset")
        return zero / zero.sum()
    exponent = -(hbar * k) ** 2 / (2.0 * kB * temperature)
    w = np.exp(exponent - exponent.max())
    return w / w.sum()


def _pair_drifts(params: GaussianPairParams, kset):
    """Drift velocities of the scaled sum/difference coordinates for every
    boost pair (k1, k2) in kset x kset, with their Maxwell-product weights
    left to the caller.  The scaled coordinate (x1 +- x2)/sqrt(2) of the
    component boosted by (k1, k2) moves at hbar (k1 +- k2) / (2 mass);
    together with the width law of free_spread this reproduces the
    closed-form thermal spread above."""
    k = np.asarray(kset, dtype=float)
    k1 = k[:, None]
    k2 = k[None, :]
    scale = params.hbar / (2.0 * params.mass)
    return scale * (k1 + k2), scale * (k1 - k2)


def _gauss_pdf(x, mean, std):
    z = (x - mean) / std
    return np.exp(-0.5 * z * z) / (std * np.sqrt(2.0 * np.pi))


def thermal_joint_density(params: GaussianPairParams, kset, temperature: float,
                          t: float, x1, x2) -> np.ndarray:
    """Position density of a thermal mixture of boosted Gaussian pairs.

    Each mixture component carries plane-wave boosts (k1, k2) drawn
    independently from ``kset`` with Maxwell weights; its density stays a
    product of Gaussians in the scaled sum/difference coordinates, spreading
    per :func:`free_spread` and drifting with the boosts.

    Parameters
    ----------
    params : GaussianPairParams
        Widths and units; ``boost_k1``/``boost_k2`` are ignored here, the
        boosts are supplied by ``kset``.
    x1, x2 : array_like
        1d sample coordinates; the density is returned on their product
        grid with shape (len(x1), len(x2)) and integrates to 1 over the
        plane.

    Returns
    -------
    ndarray
        rho(x1, x2, t), rows indexed by x1.
    """
    if temperature < 0:
        raise ValueError(f"temperature must be >= 0, got {temperature!r}")
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    if x1.ndim != 1 or x2.ndim != 1:
        raise ValueError("x1 and x2 must be 1d coordinate arrays")
    mu = maxwell_weights(kset, temperature, params.hbar, params.kB)
    v_sum, v_diff = _pair_drifts(params, kset)
    weights = mu[:, None] * mu[None, :]

    u_sum = (x1[:, None] + x2[None, :] - params.center_sum) / SQRT2
    u_diff = (x1[:, None] - x2[None, :]) / SQRT2
    s_diff = free_spread(params.sigma, t, params.mass, params.hbar)
    s_sum = free_spread(params.big_sigma, t, params.mass, params.hbar)

    rho = np.zeros((x1.size, x2.size))
    for w, vs, vd in zip(weights.ravel(), v_sum.ravel(), v_diff.ravel()):
        if w < 1e-18:
            continue
        rho += w * _gauss_pdf(u_sum, vs * t, s_sum) * _gauss_pdf(u_diff, vd * t, s_diff)
    return rho


def thermal_marginal(params: GaussianPairParams, kset, temperature: float,
                     t: float, u, coordinate: str = "difference") -> np.ndarray:
    """1d marginal density of a scaled coordinate (x1 -+ x2)/sqrt(2).

    Cheap companion of :func:`thermal_joint_density`: the mixture marginal
    only depends on k1 -+ k2, so the double momentum sum collapses.
    ``coordinate`` is "difference" or "sum" (the sum marginal is taken
    about ``center_sum``).
    """
    u = np.asarray(u, dtype=float)
    mu = maxwell_weights(kset, temperature, params.hbar, params.kB)
    v_sum, v_diff = _pair_drifts(params, kset)
    if coordinate == "difference":
        velocity, width = v_diff, params.sigma
    elif coordinate == "sum":
        velocity, width = v_sum, params.big_sigma
    else:
        raise ValueError(f"unknown coordinate {coordinate!r}")
    weights = (mu[:, None] * mu[None, :]).ravel()
    velocity = velocity.ravel()
    # collapse duplicate drift velocities before summing Gaussians
    v_round = np.round(velocity, 12)
    uniq, inverse = np.unique(v_round, return_inverse=True)
    w_uniq = np.zeros(uniq.size)
    np.add.at(w_uniq, inverse, weights)
    std = free_spread(width, t, params.mass, params.hbar)
    pdf = np.zeros_like(u)
    for w, v in zip(w_uniq, uniq):
        if w < 1e-18:
            continue
        pdf += w * _gauss_pdf(u, v * t, std)
    return pdf
