"""Driving chain of a one-armed machine and its stationary law.

States are (cam, pointer) pairs; ``(i, j)`` means the next coup is played at
cam position ``i`` with ``j`` consecutive losses showing. Flat index is
``i * J + j``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import SingularSystem
from .indexing import at, loss_run, run_term
from .machine import MachineSpec


@dataclass(frozen=True)
class TransitionMatrix:
    P: np.ndarray
    I: int  # noqa: E741
    J: int


@dataclass(frozen=True)
class StationaryLaw:
    pi: np.ndarray  # shape (I, J)
    Q: float
    p_award: float
    mu_star: float
    p_star: float


def transition_matrix(spec: MachineSpec) -> TransitionMatrix:
    I, J = spec.I, spec.J
    p = spec.p()
    P = np.zeros((I * J, I * J))
    for i in range(I):
        nxt = (i + 1) % I
        for j in range(J - 1):
            P[i * J + j, nxt * J] = p[i]
            P[i * J + j, nxt * J + j + 1] = 1.0 - p[i]
        P[i * J + J - 1, nxt * J] = 1.0
    return TransitionMatrix(P, I, J)


def stationary_oracle(tm: TransitionMatrix) -> np.ndarray:
    """Solve pi = pi P, sum(pi) = 1 directly (valid although P is periodic)."""
    n = tm.P.shape[0]
    A = tm.P.T - np.eye(n)
    A[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    try:
        x = scipy.linalg.solve(A, b)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise SingularSystem(str(exc)) from exc
    if not np.all(np.isfinite(x)):
        raise SingularSystem("non-finite stationary vector")
    return x.reshape(tm.I, tm.J)


def period_product(spec: MachineSpec) -> float:
    return math.prod(spec.q())


def stationary_pi(spec: MachineSpec) -> np.ndarray:
    I, J, d = spec.I, spec.J, spec.d
    p, q = spec.p(), spec.q()
    Q = math.prod(q)
    pi = np.empty((I, J))
    for i in range(I):
        pi[i, 0] = sum(run_term(p, q, i - 1, k, J) for k in range(d)) / (I * (1.0 - Q))
    for j in range(1, J):
        for i in range(I):
            pi[i, j] = at(q, i - 1) * pi[(i - 1) % I, j - 1]
    return pi


def stationary_d1_edges(spec: MachineSpec) -> tuple[np.ndarray, np.ndarray]:
    """Pointer-0 and pointer-(J-1) columns from the simplified I = J formulas."""
    assert spec.d == 1
    J = spec.J
    p, q = spec.p(), spec.q()
    Q = math.prod(q)
    first = np.array([at(p, i - 1) / (J * (1 - Q)) for i in range(J)])
    last = np.array([p[i] * Q / (q[i] * J * (1 - Q)) for i in range(J)])
    return first, last


def _award_from_pi(spec: MachineSpec, pi: np.ndarray) -> float:
    return float(np.dot(pi[:, spec.J - 1], spec.q()))


def award_probability_d1(spec: MachineSpec) -> float:
    assert spec.d == 1
    Q = period_product(spec)
    return float(np.mean(spec.p())) * Q / (1 - Q)


def award_probability_sum(spec: MachineSpec) -> float:
    """Double-sum form over cam positions and wrap counts k = 1..d."""
    I, J, d = spec.I, spec.J, spec.d
    p, q = spec.p(), spec.q()
    Q = math.prod(q)
    tot = sum(loss_run(q, i, k * J) * at(p, i - k * J) for i in range(I) for k in range(1, d + 1))
    return tot / (I * (1 - Q))


def stationary_closed_form(spec: MachineSpec) -> StationaryLaw:
    pi = stationary_pi(spec)
    Q = period_product(spec)
    p_award = _award_from_pi(spec, pi)
    if spec.d == 1:
        alt = award_probability_d1(spec)
        if not math.isclose(p_award, alt, rel_tol=1e-11, abs_tol=1e-15):
            raise ArithmeticError(f"award probability mismatch {p_award} vs {alt}")
    mu_star = float(np.mean(spec.mu())) + spec.J * p_award
    p_star = float(np.mean(spec.p())) + p_award
    return StationaryLaw(pi, Q, p_award, mu_star, p_star)


def award_probability(spec: MachineSpec, law: StationaryLaw) -> float:
    return _award_from_pi(spec, law.pi)


def mean_payout(spec: MachineSpec, law: StationaryLaw) -> float:
    return float(np.mean(spec.mu())) + spec.J * award_probability(spec, law)


def hit_frequency(spec: MachineSpec, law: StationaryLaw) -> float:
    return float(np.mean(spec.p())) + award_probability(spec, law)


def post_payout_distribution(spec: MachineSpec, law: StationaryLaw) -> np.ndarray:
    """Long-run law of the cam position right after a payout (pointer is 0)."""
    I, J = spec.I, spec.J
    p, q = spec.p(), spec.q()
    num = np.array([at(p, i - 1) / I + law.pi[(i - 1) % I, J - 1] * at(q, i - 1) for i in range(I)])
    return num / (float(np.mean(p)) + award_probability(spec, law))
