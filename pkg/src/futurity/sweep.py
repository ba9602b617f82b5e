"""Grid sweeps of the two-armed pattern gap over the conjecture's conditions."""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .strategies import pattern_gap_from_p, single_arm_award

CONDITIONS = "abcd"


@dataclass(frozen=True)
class SweepRow:
    J: int
    r: int
    s: int
    p_A: float
    p_B: float
    a: bool
    b: bool
    c: bool
    d: bool
    divides: bool
    gap: float


@dataclass
class SweepReport:
    rows: list[SweepRow]
    violations: list[SweepRow] = field(default_factory=list)
    min_margin: float = float("nan")

    COLUMNS = ("J", "r", "s", "p_A", "p_B", "a", "b", "c", "d", "divides", "gap")


def default_grid(step: float = 0.05) -> np.ndarray:
    n = int(round(1 / step))
    return np.round(np.arange(1, n) * step, 12)


def _flags(J: int, r: int, s: int, pA: np.ndarray, pB: np.ndarray):
    n = pA.shape
    return {
        "a": np.full(n, J == 2),
        "b": np.full(n, min(r, s) == 1),
        "c": np.full(n, r + s <= J),
        "d": pA + pB > 1 / 3,
    }


def _sweep_one(J: int, r: int, s: int, grid: np.ndarray, conditions: str) -> list[SweepRow]:
    pA, pB = np.meshgrid(grid, grid, indexing="ij")
    keep = pA != pB
    pA, pB = pA[keep], pB[keep]
    flags = _flags(J, r, s, pA, pB)
    divides = (J % (r + s)) == 0
    chosen = np.zeros(pA.shape, dtype=bool)
    for c in conditions:
        chosen |= flags[c]
    chosen |= divides
    gap = pattern_gap_from_p("A" * r + "B" * s, pA, pB, J)
    rows = []
    for k in np.flatnonzero(chosen):
        rows.append(SweepRow(J, r, s, float(pA[k]), float(pB[k]),
                             *(bool(flags[c][k]) for c in CONDITIONS), divides, float(gap[k])))
    return rows


def conjecture_sweep(J_set=range(2, 11), rs_set=None, grid=None, conditions: str = CONDITIONS,
                     threads: int = 1) -> SweepReport:
    """Evaluate the pattern gap of D = A^r B^s wherever a selected condition (or
    divisibility of J by r + s) holds. A nonnegative gap is a violation; it is
    reported, never raised."""
    if set(conditions) - set(CONDITIONS):
        raise ValueError(f"conditions must be drawn from {CONDITIONS!r}")
    rs_set = rs_set or [(r, s) for r in range(1, 5) for s in range(1, 5)]
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    jobs = [(J, r, s) for J in J_set for r, s in rs_set]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda a: _sweep_one(*a, grid, conditions), jobs))
    else:
        parts = [_sweep_one(*a, grid, conditions) for a in jobs]
    rows = sorted((row for part in parts for row in part), key=lambda x: (x.J, x.r, x.s, x.p_A, x.p_B))
    report = SweepReport(rows)
    report.violations = [x for x in rows if not x.gap < 0]
    if rows:
        report.min_margin = min(abs(x.gap) for x in rows)
    return report


def theorem_region_max_gaps(J_set, grid=None, gammas=(0.25, 0.5, 0.75), max_len: int = 6) -> dict:
    """Largest mixture gap and largest divisible-pattern gap over a p_A != p_B grid.

    Both are expected strictly negative. Pattern words are all A/B words of
    length n <= max_len with n | J, containing both letters.
    """
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    pA, pB = np.meshgrid(grid, grid, indexing="ij")
    keep = pA != pB
    pA, pB = pA[keep], pB[keep]
    worst_mix = -np.inf
    worst_pat = -np.inf
    for J in J_set:
        for g in gammas:
            pC = g * pA + (1 - g) * pB
            gap = J * (single_arm_award(pC, J) - g * single_arm_award(pA, J) - (1 - g) * single_arm_award(pB, J))
            worst_mix = max(worst_mix, float(gap.max()))
        for n in range(2, max_len + 1):
            if J % n:
                continue
            for word in itertools.product("AB", repeat=n):
                D = "".join(word)
                if "A" in D and "B" in D:
                    worst_pat = max(worst_pat, float(pattern_gap_from_p(D, pA, pB, J).max()))
    return {"mixture": worst_mix, "pattern": worst_pat}
