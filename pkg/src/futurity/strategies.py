"""Betting strategies: stop-after-payout expectations on one-armed machines and
the two-armed machine whose arms share a single Futurity pointer."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .equilibrium import StationaryLaw, award_probability_sum
from .errors import BadDist, BadJ, BadK, BadPattern
from .machine import MachineSpec, PayoutDistribution, make_spec, two_point


# --- one-armed: play until the next payout ----------------------------------


@dataclass(frozen=True)
class ExpectationTable:
    E: np.ndarray
    equilibrium_value: float
    exact: list | None = None  # Fraction entries when every input is rational


def stop_after_payout_table(spec: MachineSpec, law: StationaryLaw) -> ExpectationTable:
    """E[i, j]: expected profit of playing from state (i, j) until a payout,
    the Futurity award included."""
    I, J = spec.I, spec.J
    exact = all(d.is_exact for d in spec.dists)
    mu = [d.mu for d in spec.dists] if exact else spec.mu()
    q = [d.q for d in spec.dists] if exact else spec.q()
    E = [[None] * J for _ in range(I)]
    for i in range(I):
        E[i][J - 1] = -1 + mu[i] + J * q[i]
    for j in range(J - 2, -1, -1):
        for i in range(I):
            E[i][j] = -1 + mu[i] + q[i] * E[(i + 1) % I][j + 1]
    arr = np.array([[float(x) for x in row] for row in E])
    return ExpectationTable(arr, float(np.sum(law.pi * arr)), E if exact else None)


# --- two-armed machine -------------------------------------------------------


@dataclass(frozen=True)
class TwoArmedSpec:
    arm_A: PayoutDistribution
    arm_B: PayoutDistribution
    J: int

    def __post_init__(self):
        if not isinstance(self.J, int) or self.J < 2:
            raise BadJ(f"J must be an integer >= 2, got {self.J!r}")

    @classmethod
    def fair(cls, p_A, p_B, J: int) -> "TwoArmedSpec":
        """Both arms two-point with means chosen so each arm alone returns 1."""
        return cls(fair_arm(p_A, J), fair_arm(p_B, J), J)

    def arm(self, label: str) -> PayoutDistribution:
        return {"A": self.arm_A, "B": self.arm_B}[label]

    @property
    def pA(self) -> float:
        return float(self.arm_A.p)

    @property
    def pB(self) -> float:
        return float(self.arm_B.p)


@dataclass(frozen=True)
class SingleArm:
    arm: str

    def __post_init__(self):
        if self.arm not in ("A", "B"):
            raise BadPattern(f"arm must be 'A' or 'B', got {self.arm!r}")


@dataclass(frozen=True)
class Mixture:
    gamma: float

    def __post_init__(self):
        if not 0 < self.gamma < 1:
            raise ValueError("gamma must lie in (0, 1)")


@dataclass(frozen=True)
class Pattern:
    D: str

    def __post_init__(self):
        if not self.D or set(self.D) - {"A", "B"} or "A" not in self.D or "B" not in self.D:
            raise BadPattern(f"pattern {self.D!r} needs at least one A and one B, nothing else")

    @property
    def r(self) -> int:
        return self.D.count("A")

    @property
    def s(self) -> int:
        return self.D.count("B")


@dataclass(frozen=True)
class PointerThreshold:
    K: int


Strategy = Union[SingleArm, Mixture, Pattern, PointerThreshold]


def single_arm_award(p, J: int):
    q = 1 - p
    return p * q**J / (1 - q**J)


def single_arm_mean(p, mu, J: int):
    if not 0 < p < 1:
        raise BadDist("p must lie in (0, 1)")
    return mu + J * single_arm_award(p, J)


def fair_mu(p, J: int):
    """Base mean payout making a single arm fair (long-run mean exactly 1)."""
    if not 0 < p < 1:
        raise BadDist("p must lie in (0, 1)")
    return 1 - J * single_arm_award(p, J)


def fair_arm(p, J: int) -> PayoutDistribution:
    return two_point(p, fair_mu(p, J))


def arm_mean(spec2: TwoArmedSpec, label: str) -> float:
    arm = spec2.arm(label)
    return float(single_arm_mean(arm.p, arm.mu, spec2.J))


def mixture_mean(spec2: TwoArmedSpec, gamma: float) -> float:
    pC = gamma * spec2.pA + (1 - gamma) * spec2.pB
    muC = gamma * float(spec2.arm_A.mu) + (1 - gamma) * float(spec2.arm_B.mu)
    return muC + spec2.J * single_arm_award(pC, spec2.J)


def mixture_gap(spec2: TwoArmedSpec, gamma: float) -> float:
    """Negative when the combination is worse than the same mix on separate machines."""
    Mixture(gamma)
    base = gamma * arm_mean(spec2, "A") + (1 - gamma) * arm_mean(spec2, "B")
    return mixture_mean(spec2, gamma) - base


def casino_win_rate(p_A, p_B, J: int):
    """Casino's long-run gain per coup from a 50/50 random mixture of two fair arms."""
    qA, qB = 1 - p_A, 1 - p_B
    single = 0.5 * (p_A * qA**J / (1 - qA**J) + p_B * qB**J / (1 - qB**J))
    qC = (qA + qB) / 2
    mixed = (p_A + p_B) / 2 * qC**J / (1 - qC**J)
    return J * (single - mixed)


def casino_win_rate_supremum(J: int) -> float:
    if J < 2:
        raise BadJ("J must be >= 2")
    h = 2.0**-J
    return 0.5 * (1 - J * h / (1 - h))


# --- nonrandom patterns ------------------------------------------------------


def _pattern_probs(D: str, p_A, p_B):
    return [p_A if c == "A" else p_B for c in D]


def pattern_award_sum(D: str, p_A, p_B, J: int):
    """Award probability of pattern D from the double sum over starting phase
    and wrap count. Broadcasts over array-valued p_A, p_B."""
    Pattern(D)
    n = len(D)
    p = _pattern_probs(D, p_A, p_B)
    q = [1 - x for x in p]
    cycle = (1 - p_A) ** D.count("A") * (1 - p_B) ** D.count("B")
    total = 0
    for k in range(1, n + 1):
        extra = k * J - n * (k * J // n)
        inner = 0
        for j in range(n):
            term = p[j]
            for t in range(1, extra + 1):
                term = term * q[(j + t) % n]
            inner = inner + term
        total = total + inner * cycle ** (k * J // n)
    return total / (n * (1 - cycle**J))


def pattern_award_divisible(r: int, s: int, p_A, p_B, J: int):
    """Closed form valid when r + s divides J; depends on D only through r, s."""
    n = r + s
    if J % n:
        raise BadPattern(f"r + s = {n} does not divide J = {J}")
    g = ((1 - p_A) ** r * (1 - p_B) ** s) ** (J // n)
    return (r * p_A + s * p_B) / n * g / (1 - g)


def pattern_award_abb(p_A, p_B, J: int):
    """Printed special case D = ABB for J not divisible by 3."""
    qA, qB = 1 - p_A, 1 - p_B
    c = qA * qB**2
    K, rem = divmod(J, 3)
    one = p_A * qB + p_B * qB + p_B * qA
    two = p_A * qB**2 + p_B * qB * qA + p_B * qA * qB
    tail = (p_A + 2 * p_B) * c**J
    if rem == 1:
        num = one * c**K + two * c ** (2 * K) + tail
    elif rem == 2:
        num = two * c**K + one * c ** (2 * K + 1) + tail
    else:
        raise BadPattern("ABB special case needs J not divisible by 3")
    return num / (3 * (1 - c**J))


def induced_machine(spec2: TwoArmedSpec, D: str) -> MachineSpec:
    """One-armed machine with I = len(D) * J whose cam positions follow D."""
    Pattern(D)
    n = len(D)
    return make_spec(spec2.J, [spec2.arm(D[c % n]) for c in range(n * spec2.J)])


def pattern_award_probability(spec2: TwoArmedSpec, D: str) -> float:
    return float(pattern_award_sum(D, spec2.pA, spec2.pB, spec2.J))


def pattern_mean(spec2: TwoArmedSpec, D: str) -> float:
    pat = Pattern(D)
    base = (pat.r * float(spec2.arm_A.mu) + pat.s * float(spec2.arm_B.mu)) / len(D)
    return base + spec2.J * pattern_award_probability(spec2, D)


def pattern_gap(spec2: TwoArmedSpec, D: str) -> float:
    pat = Pattern(D)
    base = (pat.r * arm_mean(spec2, "A") + pat.s * arm_mean(spec2, "B")) / len(D)
    return pattern_mean(spec2, D) - base


def pattern_gap_from_p(D: str, p_A, p_B, J: int):
    """Gap as a function of hit probabilities alone (the means cancel)."""
    r, s = D.count("A"), D.count("B")
    single = (r * single_arm_award(p_A, J) + s * single_arm_award(p_B, J)) / (r + s)
    return J * (pattern_award_sum(D, p_A, p_B, J) - single)


def pattern_award_via_machine(spec2: TwoArmedSpec, D: str) -> float:
    return award_probability_sum(induced_machine(spec2, D))


# --- pointer-dependent strategy ---------------------------------------------


@dataclass(frozen=True)
class PointerAnalysis:
    pi1: np.ndarray
    mu_star: float
    player_edge: float
    parrondo_effect: bool


def pointer_stationary(p_A, p_B, J: int, K: int) -> np.ndarray:
    if not 1 <= K <= J - 1:
        raise BadK(f"K must lie in 1..{J - 1}, got {K}")
    qA, qB = 1 - p_A, 1 - p_B
    L = J - K
    c = sum(qA**j for j in range(K)) + qA**K * sum(qB**j for j in range(L))
    return np.array([qA**j if j < K else qA**K * qB ** (j - K) for j in range(J)]) / c


def pointer_mean(spec2: TwoArmedSpec, K: int) -> float:
    J = spec2.J
    pi1 = pointer_stationary(spec2.pA, spec2.pB, J, K)
    low, high = pi1[:K].sum(), pi1[K:].sum()
    return float(low * spec2.arm_A.mu + high * spec2.arm_B.mu + J * pi1[J - 1] * (1 - spec2.pB))


def pointer_casino_condition(p_A, p_B, J: int, K: int) -> bool:
    """True when the casino keeps an edge against the threshold-K strategy."""
    qA, qB = 1 - p_A, 1 - p_B
    L = J - K
    lhs = qA**K * qB**L
    rhs = (1 - qA**K) * qA**J / (1 - qA**J) + qA**K * (1 - qB**L) * qB**J / (1 - qB**J)
    return bool(lhs < rhs)


def pointer_strategy_analysis(p_A, p_B, J: int, K: int) -> PointerAnalysis:
    """Threshold strategy on two fair arms: arm A while fewer than K losses show."""
    pi1 = pointer_stationary(p_A, p_B, J, K)
    low, high = pi1[:K].sum(), pi1[K:].sum()
    mu_star = (
        1
        - low * J * single_arm_award(p_A, J)
        - high * J * single_arm_award(p_B, J)
        + J * pi1[J - 1] * (1 - p_B)
    )
    return PointerAnalysis(pi1, float(mu_star), float(mu_star - 1), pointer_casino_condition(p_A, p_B, J, K))

