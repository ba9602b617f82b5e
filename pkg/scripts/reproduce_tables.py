"""Print the Futurity mode laws, stationary law, stop-after-payout table and CLT summary."""
import argparse

import numpy as np

from futurity import equilibrium as eq
from futurity.limits import clt_parameters
from futurity.machine import futurity1936, futurity_reels, mode_distribution
from futurity.strategies import stop_after_payout_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dp", type=int, default=6)
    args = ap.parse_args()
    np.set_printoptions(precision=args.dp, suppress=True, linewidth=160)

    rm = futurity_reels()
    for mode in "EO":
        d = mode_distribution(rm, mode)
        counts = {int(x): int(pr * 1000) for x, pr in d.atoms}
        print(f"mode {mode}: counts/1000 {counts}  mu={d.mu}  var={d.var}  p={d.p}")

    spec = futurity1936()
    law = eq.stationary_closed_form(spec)
    print("\nstationary law (rows: cam, columns: pointer)")
    print(law.pi)
    print(f"p_award={law.p_award:.{args.dp + 1}f}  mu*={law.mu_star:.{args.dp}f}  p*={law.p_star:.{args.dp}f}")

    tab = stop_after_payout_table(spec, law)
    print("\nexpected profit playing until the next payout")
    print(tab.E)
    print(f"equilibrium-weighted value {tab.equilibrium_value:.{args.dp}f}")

    par = clt_parameters(spec)
    print(f"\nmu_bar={par.mu_bar:.{args.dp}f}  Var(S0*)={par.var_S0:.{args.dp}f}  "
          f"cov tail={par.cov_tail:.{args.dp}f}  sigma*^2={par.sigma_star_sq:.{args.dp}f}")


if __name__ == "__main__":
    main()
