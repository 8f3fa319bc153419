"""Smallest inverse-Weyl eigenvalue and negative mass of flat box fields
as a function of the box area."""

import argparse

import numpy as np

from pslab import admissibility_report, build_grid
from pslab.admissibility import wigner_bound_check
from pslab.statelib import box_field


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--shape", choices=("square", "disk"), default="square")
    ap.add_argument("--L", type=float, default=8.0)
    ap.add_argument("--Nx", type=int, default=256)
    args = ap.parse_args()

    grid = build_grid(1.0, args.L, args.Nx)
    print(f"{'omega/pi':>9} {'omega_eff':>10} {'min eig':>10} {'neg mass':>10} {'max|W| pi':>10}  verdict")
    for k in (0.25, 0.5, 1, 2, 4, 8, 16, 32):
        B = box_field(k * np.pi, args.shape, grid)
        rep = admissibility_report(B)
        print(f"{k:9.2f} {B.meta['omega_eff']:10.4f} {rep.min_eigenvalue:10.4f} {rep.negative_mass:10.4f} "
              f"{wigner_bound_check(B):10.4f}  {rep.verdict}")


if __name__ == "__main__":
    main()
