"""Sweep the pattern gap of A^r B^s over the conjecture's conditions and write a CSV."""
import argparse
import csv
import sys

from futurity.sweep import SweepReport, conjecture_sweep, default_grid


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--J-max", type=int, default=10)
    ap.add_argument("--rs-max", type=int, default=4)
    ap.add_argument("--step", type=float, default=0.05)
    ap.add_argument("--conditions", default="abcd")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    rs = [(r, s) for r in range(1, args.rs_max + 1) for s in range(1, args.rs_max + 1)]
    rep = conjecture_sweep(range(2, args.J_max + 1), rs, default_grid(args.step), args.conditions, args.threads)
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SweepReport.COLUMNS)
    for row in rep.rows:
        w.writerow([getattr(row, c) for c in SweepReport.COLUMNS])
    if fh is not sys.stdout:
        fh.close()
    print(f"{len(rep.rows)} points, {len(rep.violations)} violations, min |gap| {rep.min_margin:.3e}",
          file=sys.stderr)
    for v in rep.violations[:20]:
        print(f"  violation: {v}", file=sys.stderr)


if __name__ == "__main__":
    main()
