"""Seeded simulation of one- and two-armed machines.

Random numbers come from numpy's Philox4x32-10 counter-based generator.
Replication ``r`` uses ``Philox(seed).jumped(r)``, so a replication's stream
does not depend on how many workers run or in what order. Each coup consumes
one uniform for the payout (inverse CDF over atoms in ascending payout
order); a random-mixture strategy first consumes one more uniform per coup
for the arm choice (arm A iff u < gamma).
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numba
import numpy as np

from .errors import BadK
from .limits import clt_parameters
from .machine import MachineSpec, MachineState, PayoutDistribution
from .strategies import Mixture, Pattern, PointerThreshold, SingleArm, Strategy, TwoArmedSpec

CHUNK = 1 << 20

_CYCLE, _MIXTURE, _POINTER = 0, 1, 2


@dataclass(frozen=True)
class SimConfig:
    seed: int
    n_coups: int
    replications: int = 1
    initial_state: MachineState = field(default_factory=lambda: MachineState(0, 0))
    record_path: bool = False
    record_segments: bool = False
    threads: int = 1

    def __post_init__(self):
        if self.n_coups < 1 or self.replications < 1:
            raise ValueError("n_coups and replications must be >= 1")


@dataclass
class SimResult:
    n_coups: int
    J: int
    total_payout: float
    base_payout: float
    hits: int
    awards: int
    final_state: MachineState
    awards_by_phase: np.ndarray
    post_payout_counts: np.ndarray
    arm_counts: np.ndarray
    payouts: np.ndarray | None = None  # per coup, award included
    pointers: np.ndarray | None = None  # pointer after each coup
    arms: np.ndarray | None = None  # distribution index used at each coup
    segments: np.ndarray | None = None  # per full cycle of phases, award included
    standardized_statistic: float | None = None

    @property
    def mean_payout(self) -> float:
        return self.total_payout / self.n_coups

    @property
    def hit_rate(self) -> float:
        return self.hits / self.n_coups

    @property
    def award_rate(self) -> float:
        return self.awards / self.n_coups

    def cumulative_profit(self) -> np.ndarray:
        """Player's cumulative profit after each coup (needs record_path)."""
        return np.cumsum(self.payouts - 1.0)


@numba.njit(cache=True, nogil=True)
def _run(u_pay, u_arm, mode, gamma, cycle, K, cdf, vals, nat, J, phase, ptr,
         acc, counts, by_phase, post, arm_counts, seg_state,
         rec_path, path_pay, path_ptr, path_arm, rec_seg, seg_out, seg_n):
    n_cycle = cycle.shape[0]
    for n in range(u_pay.shape[0]):
        if mode == 0:
            dist = cycle[phase]
        elif mode == 1:
            dist = 0 if u_arm[n] < gamma else 1
        else:
            dist = 0 if ptr < K else 1
        u = u_pay[n]
        a = 0
        while a < nat[dist] - 1 and u >= cdf[dist, a]:
            a += 1
        x = vals[dist, a]
        r = x
        if x > 0.0:
            ptr = 0
            counts[0] += 1
        elif ptr == J - 1:
            ptr = 0
            r = x + J
            counts[0] += 1
            counts[1] += 1
            by_phase[phase] += 1
        else:
            ptr += 1
        acc[0] += x
        acc[1] += r
        arm_counts[dist] += 1
        old = phase
        phase = phase + 1 if phase + 1 < n_cycle else 0
        if r > 0.0:
            post[phase] += 1
        if rec_path:
            path_pay[n] = r
            path_ptr[n] = ptr
            path_arm[n] = dist
        if rec_seg:
            seg_state[0] += r
            if old == n_cycle - 1:
                if seg_n[0] < seg_out.shape[0]:
                    seg_out[seg_n[0]] = seg_state[0]
                seg_n[0] += 1
                seg_state[0] = 0.0
    return phase, ptr


def _tables(dists: list[PayoutDistribution]):
    width = max(len(d.atoms) for d in dists)
    cdf = np.ones((len(dists), width))
    vals = np.zeros((len(dists), width))
    nat = np.array([len(d.atoms) for d in dists], dtype=np.int64)
    for k, d in enumerate(dists):
        c = np.cumsum(d.probs)
        c[-1] = 1.0
        cdf[k, : len(c)] = c
        vals[k, : len(c)] = d.payouts
    return cdf, vals, nat


def _generator(seed: int, replication: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed).jumped(replication))


def _simulate(dists, J, mode, cycle, gamma, K, n, rng, phase, ptr, record_path, record_segments):
    cdf, vals, nat = _tables(dists)
    cycle = np.asarray(cycle, dtype=np.int64)
    n_phase = len(cycle)
    acc = np.zeros(2)
    counts = np.zeros(2, dtype=np.int64)
    by_phase = np.zeros(n_phase, dtype=np.int64)
    post = np.zeros(n_phase, dtype=np.int64)
    arm_counts = np.zeros(len(dists), dtype=np.int64)
    seg_state = np.zeros(1)
    seg_n = np.zeros(1, dtype=np.int64)
    seg_all = np.zeros(n // n_phase + 1 if record_segments else 0)
    pay_all = np.zeros(n if record_path else 0)
    ptr_all = np.zeros(n if record_path else 0, dtype=np.int64)
    arm_all = np.zeros(n if record_path else 0, dtype=np.int64)
    empty_f = np.zeros(0)
    empty_i = np.zeros(0, dtype=np.int64)
    if record_segments and phase != 0:
        raise ValueError("segment recording needs the run to start at phase 0")
    done = 0
    while done < n:
        m = min(CHUNK, n - done)
        if mode == _MIXTURE:
            u = rng.random((m, 2))
            u_arm, u_pay = u[:, 0].copy(), u[:, 1].copy()
        else:
            u_pay, u_arm = rng.random(m), empty_f
        sl = slice(done, done + m)
        phase, ptr = _run(
            u_pay, u_arm, mode, gamma, cycle, K, cdf, vals, nat, J, phase, ptr,
            acc, counts, by_phase, post, arm_counts, seg_state,
            record_path,
            pay_all[sl] if record_path else empty_f,
            ptr_all[sl] if record_path else empty_i,
            arm_all[sl] if record_path else empty_i,
            record_segments, seg_all, seg_n,
        )
        done += m
    return SimResult(
        n_coups=n,
        J=J,
        total_payout=float(acc[1]),
        base_payout=float(acc[0]),
        hits=int(counts[0]),
        awards=int(counts[1]),
        final_state=MachineState(int(phase), int(ptr)),
        awards_by_phase=by_phase,
        post_payout_counts=post,
        arm_counts=arm_counts,
        payouts=pay_all if record_path else None,
        pointers=ptr_all if record_path else None,
        arms=arm_all if record_path else None,
        segments=seg_all[: int(seg_n[0])] if record_segments else None,
    )


def _one_armed(spec: MachineSpec, cfg: SimConfig, replication: int) -> SimResult:
    st = cfg.initial_state
    if not (0 <= st.cam < spec.I and 0 <= st.pointer < spec.J):
        raise ValueError(f"initial state {st} out of range")
    return _simulate(
        list(spec.dists), spec.J, _CYCLE, np.arange(spec.I), 0.0, 0, cfg.n_coups,
        _generator(cfg.seed, replication), st.cam, st.pointer,
        cfg.record_path, cfg.record_segments,
    )


def simulate_one_armed(spec: MachineSpec, cfg: SimConfig) -> SimResult:
    """One run of ``cfg.n_coups`` coups; ``final_state`` is (cam, pointer)."""
    return _one_armed(spec, cfg, 0)


def _strategy_args(strategy: Strategy, J: int):
    if isinstance(strategy, SingleArm):
        return _CYCLE, [0 if strategy.arm == "A" else 1], 0.0, 0
    if isinstance(strategy, Mixture):
        return _MIXTURE, [0], float(strategy.gamma), 0
    if isinstance(strategy, Pattern):
        return _CYCLE, [0 if c == "A" else 1 for c in strategy.D], 0.0, 0
    if isinstance(strategy, PointerThreshold):
        if not 1 <= strategy.K <= J - 1:
            raise BadK(f"K must lie in 1..{J - 1}, got {strategy.K}")
        return _POINTER, [0], 0.0, int(strategy.K)
    raise TypeError(f"unknown strategy {strategy!r}")


def _two_armed(spec2: TwoArmedSpec, strategy: Strategy, cfg: SimConfig, replication: int) -> SimResult:
    mode, cycle, gamma, K = _strategy_args(strategy, spec2.J)
    ptr = cfg.initial_state.pointer
    if not 0 <= ptr < spec2.J:
        raise ValueError("initial pointer out of range")
    return _simulate(
        [spec2.arm_A, spec2.arm_B], spec2.J, mode, cycle, gamma, K, cfg.n_coups,
        _generator(cfg.seed, replication), 0, ptr, cfg.record_path, cfg.record_segments,
    )


def simulate_two_armed(spec2: TwoArmedSpec, strategy: Strategy, cfg: SimConfig) -> SimResult:
    """One run; ``final_state`` is (pattern phase, pointer) and ``arm_counts``
    counts pulls of A and B."""
    return _two_armed(spec2, strategy, cfg, 0)


def _replicate(fn, cfg: SimConfig) -> list[SimResult]:
    reps = range(cfg.replications)
    if cfg.threads <= 1:
        return [fn(r) for r in reps]
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        return list(pool.map(fn, reps))


def replicate_one_armed(spec: MachineSpec, cfg: SimConfig) -> list[SimResult]:
    return _replicate(lambda r: _one_armed(spec, cfg, r), cfg)


def replicate_two_armed(spec2: TwoArmedSpec, strategy: Strategy, cfg: SimConfig) -> list[SimResult]:
    return _replicate(lambda r: _two_armed(spec2, strategy, cfg, r), cfg)


def standardize(total: float, n: int, mu_star: float, sigma_star_sq: float) -> float:
    return (total - n * mu_star) / math.sqrt(n * sigma_star_sq)


def clt_experiment(spec: MachineSpec, cfg: SimConfig) -> np.ndarray:
    """Standardised payout totals of independent replications."""
    if cfg.replications < 100:
        raise ValueError("clt_experiment needs at least 100 replications")
    par = clt_parameters(spec)
    runs = replicate_one_armed(spec, cfg)
    out = np.empty(len(runs))
    for k, res in enumerate(runs):
        res.standardized_statistic = standardize(res.total_payout, res.n_coups, par.mu_star, par.sigma_star_sq)
        out[k] = res.standardized_statistic
    return out
