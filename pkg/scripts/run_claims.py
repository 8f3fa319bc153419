"""Run the claims suite and write one JSON report per claim."""

import argparse
from pathlib import Path

from pslab import build_grid, run_claim
from pslab.claims import CLAIM_IDS
from pslab.io import atomic_write


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="claim_reports")
    ap.add_argument("--L", type=float, default=8.0)
    ap.add_argument("--Nx", type=int, default=256)
    args = ap.parse_args()

    grid = build_grid(1.0, args.L, args.Nx)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for cid in CLAIM_IDS:
        rep = run_claim(cid, grid)
        atomic_write(out / f"{cid}.json", rep.to_json() + "\n")
        failed = [m.name for m in rep.measurements if m.passed is False]
        print(f"{cid}  {rep.verdict:<13} {len(rep.measurements):3d} measurements"
              + (f"  failing: {', '.join(failed)}" if failed else ""))


if __name__ == "__main__":
    main()
