"""Momentum-space anatomy of the on-site attraction.

For each total momentum K the uniform superposition of pair momenta
(k, K - k) is an exact eigenstate of the on-site interaction, no matter
how weak the coupling: the attraction acts entirely inside each total-
momentum sector.  The script verifies this on a small ring, shows that
K lives on a circle (K and K + 2*pi give the same state), and drives K
adiabatically with a linear tilt.
"""

import argparse
from pathlib import Path

import numpy as np

from pairdyn import cli
from pairdyn.hamiltonians import (build_psi_K, h_linear_tilt,
                                  h_onsite_interaction, momentum_grid)

D = 12
GAMMA = -2.5
ETA = 0.4


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir",
                        default="artifacts/demos/momentum_pairing")
    outdir = Path(parser.parse_args().outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    h_int = h_onsite_interaction(D, GAMMA).matrix
    print(f"{D}-site ring, attraction gamma = {GAMMA}")
    print("eigenstate residual |H_int psi_K - gamma psi_K| per total "
          "momentum K:")
    rows = []
    for K in momentum_grid(D):
        psi = build_psi_K(D, K).flat()
        residual = np.linalg.norm(h_int @ psi - GAMMA * psi)
        rows.append([K, residual])
        print(f"  K = {K:8.4f}   residual {residual:.2e}")
    cli.write_csv(outdir / "eigenstate_residuals.csv",
                  {"d": D, "gamma": GAMMA}, ["K", "residual"],
                  np.array(rows))

    K = momentum_grid(D)[3]
    wrap = np.max(np.abs(build_psi_K(D, K).amplitudes
                         - build_psi_K(D, K + 2.0 * np.pi).amplitudes))
    print(f"\nK and K + 2*pi build the same state "
          f"(largest amplitude gap {wrap:.1e})")

    tilt = h_linear_tilt(D, ETA).matrix
    energies, vectors = np.linalg.eigh(tilt)
    t = np.pi / (ETA * D)
    psi = build_psi_K(D, 0.5 * np.pi).flat()
    evolved = vectors @ (np.exp(-1j * energies * t)
                         * (vectors.conj().T @ psi))
    target = build_psi_K(D, 0.5 * np.pi - 2.0 * ETA * t).flat()
    fidelity = np.abs(np.vdot(target, evolved))
    print(f"a tilt eta = {ETA} drives K at rate -2 eta: after t = {t:.4f} "
          f"the overlap with the shifted state is {fidelity:.9f}")
    print(f"wrote eigenstate_residuals.csv to {outdir}")


if __name__ == "__main__":
    main()
