"""Expected casino profit curves for the default strategy roster on two fair
arms, with a Monte Carlo overlay, written as CSV."""
import argparse
import csv
import math
import sys

import numpy as np

from futurity.montecarlo import SimConfig, replicate_two_armed
from futurity.strategies import TwoArmedSpec
from futurity.twoarm import default_roster, expected_casino_profit


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pA", type=float, default=0.3)
    ap.add_argument("--pB", type=float, default=1 / 15)
    ap.add_argument("--J", type=int, default=10)
    ap.add_argument("--K", type=int, default=4)
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--reps", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    spec2 = TwoArmedSpec.fair(args.pA, args.pB, args.J)
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["coup", "strategy", "expected_casino_profit", "simulated_mean", "simulated_se"])
    for label, strat in default_roster(args.K):
        curve = expected_casino_profit(spec2, strat, args.n)
        cfg = SimConfig(seed=args.seed, n_coups=args.n, replications=args.reps, record_path=True,
                        threads=args.threads)
        paths = np.array([np.cumsum(1.0 - r.payouts) for r in replicate_two_armed(spec2, strat, cfg)])
        mean, se = paths.mean(axis=0), paths.std(axis=0, ddof=1) / math.sqrt(args.reps)
        for t in range(args.n):
            w.writerow([t + 1, label, f"{curve[t]:.6f}", f"{mean[t]:.6f}", f"{se[t]:.6f}"])
        z = (mean[-1] - curve[-1]) / se[-1]
        print(f"{label:>12}: expected {curve[-1]:9.3f}  simulated {mean[-1]:9.3f}  z={z:+.2f}", file=sys.stderr)
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()
