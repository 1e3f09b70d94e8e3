"""Free spreading of a position-correlated pair.

A pair whose centre of mass is pinned much tighter than its internal
size is strongly entangled: each particle alone looks mixed, yet the
interparticle distance survives long after both single-particle clouds
have delocalized.  This script prints the closed-form story and then
reproduces it with exact lattice evolution on a 40-site ring.
"""

import argparse
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from pairdyn import cli
from pairdyn.continuum import (cm_spread_at_lifetime, free_spread, lifetime,
                               purity)
from pairdyn.experiments import run_free_spread

SIGMA = 2.0       # width of the interparticle distance
BIG_SIGMA = 0.01  # width of the centre of mass


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="artifacts/demos/free_spreading")
    outdir = Path(parser.parse_args().outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    tau = lifetime(SIGMA)
    print(f"pair widths: distance sigma = {SIGMA}, "
          f"centre of mass Sigma = {BIG_SIGMA}")
    print(f"single-particle purity {purity(SIGMA, BIG_SIGMA):.4f} "
          "(1 would mean no correlation)")
    print(f"correlation lifetime tau = {tau:g}; at that moment the centre "
          f"of mass has already spread to {cm_spread_at_lifetime(SIGMA, BIG_SIGMA):.1f}")
    print()
    print("closed form, scaled spreads at a few times:")
    for t in (0.0, tau / 2, tau, 2 * tau):
        print(f"  t={t:4.1f}   centre of mass {free_spread(BIG_SIGMA, t):8.2f}"
              f"   distance {free_spread(SIGMA, t):6.3f}")

    print()
    print("exact evolution on a 40-site ring (this diagonalizes a "
          "1600-dimensional matrix once)...")
    result = run_free_spread(sigma=SIGMA, big_sigma=BIG_SIGMA)
    com = result.observables["com_spread"]
    rel = result.observables["relative_spread"]
    t = result.abscissa
    print(f"  lattice: centre of mass {com[0]:.3f} -> {com[-1]:.3f}, "
          f"distance {rel[0]:.3f} -> {rel[-1]:.3f} over t in [0, {t[-1]:g}]")

    cli.write_csv(outdir / "spread_vs_time.csv",
                  {"sigma": SIGMA, "big_sigma": BIG_SIGMA},
                  ["t", "com_spread", "relative_spread"],
                  np.column_stack([t, com, rel]))

    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    axes[0].plot(t, com, label="centre of mass")
    axes[0].plot(t, rel, label="distance")
    axes[0].set_xlabel("t")
    axes[0].set_ylabel("scaled spread")
    axes[0].legend()
    axes[0].set_title("pinned centre of mass delocalizes first")
    label, grid = result.frames[-1]
    axes[1].imshow(grid, origin="lower", cmap="magma")
    axes[1].set_title(f"joint density, {label.split('=')[1]} time units")
    axes[1].set_xlabel("$x_2$")
    axes[1].set_ylabel("$x_1$")
    fig.tight_layout()
    fig.savefig(outdir / "free_spreading.png", dpi=120)
    print(f"wrote {outdir}/spread_vs_time.csv and free_spreading.png")


if __name__ == "__main__":
    main()
