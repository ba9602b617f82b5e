"""Command-line front end: ``futurity <command> [flags]``.

Every command builds a :class:`Table` of raw values; the emitter formats
floats to ``--dp`` places and writes CSV (default) or a JSON document.
Exit status: 0 on success, 2 on usage errors, 1 on domain errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import equilibrium as eq
from .errors import FuturityError
from .limits import award_clt_parameters, clt_parameters, hit_clt_parameters
from .montecarlo import SimConfig, replicate_one_armed, replicate_two_armed
from .specfile import BUILTIN_REELS, dumps, load_spec, reels_to_doc, spec_to_doc
from .strategies import (
    Mixture,
    Pattern,
    PointerThreshold,
    SingleArm,
    TwoArmedSpec,
    arm_mean,
    mixture_gap,
    mixture_mean,
    pattern_award_probability,
    pattern_award_via_machine,
    pattern_gap,
    pattern_mean,
    pointer_casino_condition,
    pointer_mean,
    pointer_stationary,
    stop_after_payout_table,
    two_point,
)
from .sweep import SweepReport, conjecture_sweep, default_grid
from .twoarm import default_roster, expected_casino_profit


@dataclass
class Table:
    columns: list[str]
    rows: list[list]
    meta: dict = field(default_factory=dict)


def _cell(x, dp: int):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.{dp}f}"
    return str(x)


def _doc_cell(x, dp: int):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return round(float(x), dp)
    return x


def render(table: Table, fmt: str, dp: int) -> str:
    if fmt == "doc":
        doc = {
            "columns": table.columns,
            "rows": [[_doc_cell(x, dp) for x in row] for row in table.rows],
        }
        if table.meta:
            doc["meta"] = {k: _doc_cell(v, dp) for k, v in table.meta.items()}
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([_cell(x, dp) for x in row])
    return buf.getvalue()


def _kv(pairs) -> Table:
    return Table(["quantity", "value"], [list(p) for p in pairs])


# --- commands ---------------------------------------------------------------


def cmd_analyze(a) -> Table:
    spec = load_spec(a.machine)
    law = eq.stationary_closed_form(spec)
    rho = eq.post_payout_distribution(spec, law)
    ev = stop_after_payout_table(spec, law).equilibrium_value
    rows = [("I", spec.I), ("J", spec.J), ("d", spec.d), ("Q", law.Q),
            ("p_award", law.p_award), ("mu_star", law.mu_star), ("p_star", law.p_star),
            ("stop_after_payout_value", ev)]
    rows += [(f"rho_{i}", float(r)) for i, r in enumerate(rho)]
    return _kv(rows)


def cmd_variance(a) -> Table:
    spec = load_spec(a.machine)
    par = clt_parameters(spec)
    law = eq.stationary_closed_form(spec)
    return _kv([
        ("mu_bar", par.mu_bar), ("var_S0", par.var_S0), ("cov_S0_S1", par.cov1),
        ("cov_tail", par.cov_tail), ("sigma_bar_sq", par.sigma_bar_sq),
        ("sigma_star_sq", par.sigma_star_sq), ("mu_star", par.mu_star),
        ("p_star", law.p_star), ("p_award", law.p_award),
        ("hit_sigma_star_sq", hit_clt_parameters(spec).sigma_star_sq),
        ("award_sigma_star_sq", award_clt_parameters(spec).sigma_star_sq),
    ])


def cmd_table3(a) -> Table:
    spec = load_spec(a.machine)
    pi = eq.stationary_closed_form(spec).pi
    rows = []
    for i, row in enumerate(pi):
        s = float(row.sum())
        total = f"1/{spec.I}" if abs(s - 1 / spec.I) <= 1e-12 else s
        rows.append([i, *map(float, row), total])
    return Table(["cam", *map(str, range(spec.J)), "row_sum"], rows)


def cmd_table4(a) -> Table:
    spec = load_spec(a.machine)
    tab = stop_after_payout_table(spec, eq.stationary_closed_form(spec))
    rows = [[i, *map(float, row)] for i, row in enumerate(tab.E)]
    return Table(["cam", *map(str, range(spec.J))], rows, {"equilibrium_value": tab.equilibrium_value})


def _two_armed(a) -> TwoArmedSpec:
    if a.fair:
        return TwoArmedSpec.fair(a.pA, a.pB, a.J)
    if a.muA is None or a.muB is None:
        raise _Usage("--muA and --muB are required unless --fair is given")
    return TwoArmedSpec(two_point(a.pA, a.muA), two_point(a.pB, a.muB), a.J)


def cmd_parrondo(a) -> Table:
    spec2 = _two_armed(a)
    base = [("p_A", spec2.pA), ("p_B", spec2.pB), ("J", spec2.J),
            ("mu_star_A", arm_mean(spec2, "A")), ("mu_star_B", arm_mean(spec2, "B"))]
    if a.kind == "mixture":
        gap = mixture_gap(spec2, a.gamma)
        rows = base + [("gamma", a.gamma), ("mu_star_mix", mixture_mean(spec2, a.gamma)),
                       ("gap", gap), ("casino_win_rate", -gap)]
    elif a.kind == "pattern":
        pat = Pattern(a.pattern)
        gap = pattern_gap(spec2, pat.D)
        rows = base + [("pattern", pat.D), ("r", pat.r), ("s", pat.s),
                       ("p_award", pattern_award_probability(spec2, pat.D)),
                       ("p_award_induced_machine", pattern_award_via_machine(spec2, pat.D)),
                       ("mu_star_pattern", pattern_mean(spec2, pat.D)),
                       ("gap", gap), ("casino_win_rate", -gap)]
    else:
        mu = pointer_mean(spec2, a.K)
        pi1 = pointer_stationary(spec2.pA, spec2.pB, spec2.J, a.K)
        rows = base + [("K", a.K), ("mu_star_pointer", mu), ("player_edge", mu - 1),
                       ("casino_keeps_edge", pointer_casino_condition(spec2.pA, spec2.pB, spec2.J, a.K))]
        rows += [(f"pi1_{j}", float(x)) for j, x in enumerate(pi1)]
    return _kv(rows)


def _strategy(a):
    if a.strategy in ("A", "B"):
        return SingleArm(a.strategy)
    if a.strategy == "mixture":
        return Mixture(a.gamma)
    if a.strategy == "pattern":
        return Pattern(a.pattern)
    return PointerThreshold(a.K)


def cmd_simulate(a) -> Table:
    cfg = SimConfig(seed=a.seed, n_coups=a.n, replications=a.reps, record_path=a.path, threads=a.threads)
    if a.strategy is None:
        runs = replicate_one_armed(load_spec(a.machine), cfg)
    else:
        runs = replicate_two_armed(_two_armed(a), _strategy(a), cfg)
    if a.path:
        casino = np.cumsum(1.0 - runs[0].payouts)
        return Table(["coup", "cumulative_profit"], [[t + 1, float(v)] for t, v in enumerate(casino)])
    rows = [[r, res.n_coups, res.total_payout, res.mean_payout, res.hits, res.awards,
             res.final_state.cam, res.final_state.pointer] for r, res in enumerate(runs)]
    return Table(["replication", "n", "total_payout", "mean_payout", "hits", "awards",
                  "final_phase", "final_pointer"], rows)


def _parse_J_set(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        lo, _, hi = part.partition("-")
        out.extend(range(int(lo), int(hi or lo) + 1))
    return out


def cmd_conjecture(a) -> Table:
    rs = [(r, s) for r in range(1, a.rs_max + 1) for s in range(1, a.rs_max + 1)]
    rep: SweepReport = conjecture_sweep(_parse_J_set(a.J_set), rs, default_grid(a.step),
                                        a.conditions, threads=a.threads)
    rows = rep.violations if a.violations_only else rep.rows
    print(f"conjecture sweep: {len(rep.rows)} points, {len(rep.violations)} violations, "
          f"min margin {rep.min_margin:.3e}", file=sys.stderr)
    return Table(list(SweepReport.COLUMNS),
                 [[getattr(x, c) for c in SweepReport.COLUMNS] for x in rows],
                 {"points": len(rep.rows), "violations": len(rep.violations), "min_margin": rep.min_margin})


def cmd_fig1(a) -> Table:
    spec2 = TwoArmedSpec.fair(a.pA, a.pB, a.J)
    cols = ["coup", "strategy", "expected_casino_profit"]
    if a.reps:
        cols += ["simulated_mean", "simulated_se"]
    rows = []
    for label, strat in default_roster(a.K):
        curve = expected_casino_profit(spec2, strat, a.n)
        if a.reps:
            cfg = SimConfig(seed=a.seed, n_coups=a.n, replications=a.reps, record_path=True, threads=a.threads)
            paths = np.array([np.cumsum(1.0 - r.payouts) for r in replicate_two_armed(spec2, strat, cfg)])
            mean = paths.mean(axis=0)
            se = paths.std(axis=0, ddof=1) / np.sqrt(a.reps) if a.reps > 1 else np.full(a.n, np.nan)
        for t in range(a.n):
            row = [t + 1, label, float(curve[t])]
            if a.reps:
                row += [float(mean[t]), float(se[t])]
            rows.append(row)
    return Table(cols, rows)


class _Usage(Exception):
    pass


# --- parser -----------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--out", help="write here instead of stdout")
    out.add_argument("--format", choices=("csv", "doc"), default="csv")
    out.add_argument("--dp", type=int, default=6, help="decimal places (default 6)")
    out.add_argument("--threads", type=int, default=1)

    mach = argparse.ArgumentParser(add_help=False)
    mach.add_argument("--machine", default="builtin:futurity1936", help="builtin:<name> or spec-file path")

    arms = argparse.ArgumentParser(add_help=False)
    arms.add_argument("--pA", type=float, default=0.3)
    arms.add_argument("--pB", type=float, default=1 / 15)
    arms.add_argument("--J", type=int, default=10)
    arms.add_argument("--fair", action="store_true", help="set each arm's mean so it is fair alone")
    arms.add_argument("--muA", type=float)
    arms.add_argument("--muB", type=float)
    arms.add_argument("--gamma", type=float, default=0.5)
    arms.add_argument("--pattern", default="AB")
    arms.add_argument("--K", type=int, default=4)

    def runs(n: int, reps: int) -> argparse.ArgumentParser:
        r = argparse.ArgumentParser(add_help=False)
        r.add_argument("--seed", type=int, default=0)
        r.add_argument("--n", type=int, default=n, help=f"coups per replication (default {n})")
        r.add_argument("--reps", type=int, default=reps, help=f"replications (default {reps})")
        return r

    p = argparse.ArgumentParser(prog="futurity", description="Futurity slot machine analyses")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[out, mach], help="equilibrium report")
    sub.add_parser("variance", parents=[out, mach], help="central-limit parameters")
    sub.add_parser("table3", parents=[out, mach], help="stationary distribution")
    sub.add_parser("table4", parents=[out, mach], help="stop-after-payout expectations")
    s = sub.add_parser("simulate", parents=[out, mach, arms, runs(10**6, 1)], help="Monte Carlo runs")
    s.add_argument("--strategy", choices=("A", "B", "mixture", "pattern", "pointer"),
                   help="simulate the two-armed machine under this strategy")
    s.add_argument("--path", action="store_true", help="emit casino cumulative profit of replication 0")
    s = sub.add_parser("parrondo", parents=[out, arms], help="two-armed strategy analysis")
    s.add_argument("kind", choices=("mixture", "pattern", "pointer"))
    s = sub.add_parser("conjecture", parents=[out], help="pattern-gap sweep")
    s.add_argument("--J", dest="J_set", default="2-10", help="e.g. 2-10 or 2,3,7")
    s.add_argument("--rs-max", type=int, default=4)
    s.add_argument("--step", type=float, default=0.05)
    s.add_argument("--conditions", default="abcd")
    s.add_argument("--violations-only", action="store_true")
    sub.add_parser("fig1", parents=[out, arms, runs(200, 0)], help="expected casino profit curves")
    s = sub.add_parser("spec-dump", parents=[mach], help="write a machine spec file")
    s.add_argument("--reels", action="store_true", help="dump the reel form of a builtin")
    s.add_argument("--out")
    return p


COMMANDS = {
    "analyze": cmd_analyze, "variance": cmd_variance, "table3": cmd_table3,
    "table4": cmd_table4, "simulate": cmd_simulate, "parrondo": cmd_parrondo,
    "conjecture": cmd_conjecture, "fig1": cmd_fig1,
}


def _spec_dump(a) -> str:
    if a.reels:
        name = a.machine.removeprefix("builtin:")
        if not a.machine.startswith("builtin:") or name not in BUILTIN_REELS:
            raise _Usage("--reels needs a builtin machine")
        return dumps(reels_to_doc(BUILTIN_REELS[name]()))
    return dumps(spec_to_doc(load_spec(a.machine)))


def run(argv=None) -> int:
    parser = _parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if a.command == "spec-dump":
            text = _spec_dump(a)
        else:
            if a.dp < 0:
                raise _Usage("--dp must be >= 0")
            text = render(COMMANDS[a.command](a), a.format, a.dp)
    except _Usage as exc:
        print(f"futurity: error: {exc}", file=sys.stderr)
        return 2
    except (FuturityError, ValueError, ArithmeticError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
