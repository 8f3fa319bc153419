"""How the domain half-width L controls aliasing of long-range coherences.

For each L the table shows the purity error, the coherence tail, the most
negative Husimi value and the smallest inverse-Weyl eigenvalue.
"""

import argparse

from pslab import admissibility_report, build_grid, husimi_from_state, purity_integral, wigner_from_pure
from pslab.statelib import pure_fixtures
from pslab.weyl import coherence_tail


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--L", type=float, nargs="+", default=[8.0, 10.0, 12.0, 16.0])
    ap.add_argument("--Nx", type=int, default=256)
    args = ap.parse_args()

    print(f"{'L':>5} {'state':<28} {'purity-1':>11} {'tail':>10} {'min Q':>11} {'min eig':>11}")
    for L in args.L:
        grid = build_grid(1.0, L, args.Nx)
        for spec in pure_fixtures():
            psi = spec.build(grid)
            W = wigner_from_pure(psi)
            rep = admissibility_report(W)
            print(f"{L:5.1f} {spec.label():<28} {purity_integral(W) - 1:11.2e} {coherence_tail(psi):10.2e} "
                  f"{husimi_from_state(psi).values.min():11.2e} {rep.min_eigenvalue:11.2e}")


if __name__ == "__main__":
    main()
