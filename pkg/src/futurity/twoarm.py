"""Exact Markov chain of a two-armed machine under a given strategy.

State is (phase, pointer). The phase only moves for pattern strategies
(position within the repeated word); other strategies have a single phase.
Used for direct-calculation expected profit curves and as a generic
stationary-mean oracle for every strategy's closed form.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import BadK, SingularSystem
from .strategies import Mixture, Pattern, PointerThreshold, SingleArm, Strategy, TwoArmedSpec


@dataclass(frozen=True)
class StrategyChain:
    P: np.ndarray  # transition matrix over (phase, pointer), flat index phase*J + pointer
    reward: np.ndarray  # expected payout (award included) of the next coup
    n_phase: int
    J: int


def _prob_A(strategy: Strategy, phase: int, pointer: int) -> float:
    if isinstance(strategy, SingleArm):
        return 1.0 if strategy.arm == "A" else 0.0
    if isinstance(strategy, Mixture):
        return float(strategy.gamma)
    if isinstance(strategy, Pattern):
        return 1.0 if strategy.D[phase] == "A" else 0.0
    if isinstance(strategy, PointerThreshold):
        return 1.0 if pointer < strategy.K else 0.0
    raise TypeError(f"unknown strategy {strategy!r}")


def strategy_chain(spec2: TwoArmedSpec, strategy: Strategy) -> StrategyChain:
    J = spec2.J
    if isinstance(strategy, PointerThreshold) and not 1 <= strategy.K <= J - 1:
        raise BadK(f"K must lie in 1..{J - 1}, got {strategy.K}")
    n_phase = len(strategy.D) if isinstance(strategy, Pattern) else 1
    arms = [(float(spec2.arm_A.p), float(spec2.arm_A.mu)), (float(spec2.arm_B.p), float(spec2.arm_B.mu))]
    n = n_phase * J
    P = np.zeros((n, n))
    reward = np.zeros(n)
    for ph in range(n_phase):
        nxt = (ph + 1) % n_phase
        for j in range(J):
            s = ph * J + j
            wA = _prob_A(strategy, ph, j)
            for w, (p, mu) in zip((wA, 1.0 - wA), arms):
                if w == 0.0:
                    continue
                reward[s] += w * (mu + (J * (1 - p) if j == J - 1 else 0.0))
                P[s, nxt * J] += w * p
                P[s, nxt * J + (j + 1 if j < J - 1 else 0)] += w * (1 - p)
    return StrategyChain(P, reward, n_phase, J)


def expected_payouts(chain: StrategyChain, n_coups: int, initial_pointer: int = 0) -> np.ndarray:
    """Expected payout of coups 1..n by pushing the state distribution forward."""
    v = np.zeros(chain.P.shape[0])
    v[initial_pointer] = 1.0
    out = np.empty(n_coups)
    for t in range(n_coups):
        out[t] = v @ chain.reward
        v = v @ chain.P
    return out


def expected_casino_profit(spec2: TwoArmedSpec, strategy: Strategy, n_coups: int,
                           initial_pointer: int = 0) -> np.ndarray:
    """Casino's expected cumulative profit after each of coups 1..n."""
    pay = expected_payouts(strategy_chain(spec2, strategy), n_coups, initial_pointer)
    return np.cumsum(1.0 - pay)


def strategy_mean(spec2: TwoArmedSpec, strategy: Strategy) -> float:
    """Long-run mean payout per coup from the chain's stationary law."""
    ch = strategy_chain(spec2, strategy)
    n = ch.P.shape[0]
    A = ch.P.T - np.eye(n)
    A[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    try:
        pi = scipy.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    return float(pi @ ch.reward)


def default_roster(K: int = 4) -> list[tuple[str, Strategy]]:
    return [
        ("A", SingleArm("A")),
        ("B", SingleArm("B")),
        ("mixture 1/2", Mixture(0.5)),
        ("AB", Pattern("AB")),
        ("ABB", Pattern("ABB")),
        ("AABB", Pattern("AABB")),
        (f"pointer K={K}", PointerThreshold(K)),
    ]


def profit_curves(p_A: float, p_B: float, J: int, n_coups: int,
                 roster: list[tuple[str, Strategy]] | None = None) -> list[tuple[int, str, float]]:
    """(coup, strategy label, expected casino cumulative profit) on fair arms."""
    spec2 = TwoArmedSpec.fair(p_A, p_B, J)
    rows = []
    for label, strat in roster or default_roster():
        curve = expected_casino_profit(spec2, strat, n_coups)
        rows.extend((t + 1, label, float(v)) for t, v in enumerate(curve))
    return rows
