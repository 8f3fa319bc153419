"""Wehrl entropy of oscillator eigenstates against the closed form
S_n = 1 + ln(2 pi) + n + ln(n!) - n * digamma(n + 1)."""

import argparse

import numpy as np
from scipy.special import digamma, gammaln

from pslab import build_grid, husimi_from_state, wehrl_entropy
from pslab.statelib import harmonic_eigenstate


def closed_form(n):
    return 1 + np.log(2 * np.pi) + n + gammaln(n + 1) - n * digamma(n + 1)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=8)
    ap.add_argument("--L", type=float, default=12.0)
    ap.add_argument("--Nx", type=int, default=256)
    args = ap.parse_args()

    grid = build_grid(1.0, args.L, args.Nx)
    print(f"{'n':>3} {'grid':>10} {'closed form':>12} {'diff':>10}")
    for n in range(args.nmax + 1):
        s = wehrl_entropy(husimi_from_state(harmonic_eigenstate(n, grid)))
        ref = closed_form(n)
        print(f"{n:3d} {s:10.6f} {ref:12.6f} {s - ref:10.2e}")


if __name__ == "__main__":
    main()
