"""Central-limit parameters of the payout sequence, from basic parameters only.

Coups are numbered 1..I within a segment; coup n is played at cam position
n - 1. ``T(k, j)`` is the probability that coup j ends a loss run of exactly
k*J coups preceded by a win, and ``P[c]`` is the probability that the coup
at cam position c pays the Futurity award.

Every function takes an ``award`` keyword: the amount added on an award coup.
It defaults to J (the real machine). Setting payouts to indicators and
``award=1`` yields the variance parameter of the hit count; zero payouts and
``award=1`` that of the award count.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateVariance
from .indexing import below, loss_run, run_term
from .machine import MachineSpec, bernoulli, make_spec


@dataclass(frozen=True)
class CltParameters:
    P: np.ndarray
    mu_bar: float
    var_S0: float
    cov1: float
    cov_tail: float
    sigma_bar_sq: float
    sigma_star_sq: float
    Q: float

    @property
    def mu_star(self) -> float:
        return self.mu_bar / len(self.P)


class _Basic:
    """Periodic basic parameters plus the T table, 1-based coup indexing."""

    def __init__(self, spec: MachineSpec, mu=None, var=None):
        self.I, self.J, self.d = spec.I, spec.J, spec.d
        self.p, self.q = spec.p(), spec.q()
        self.mu = spec.mu() if mu is None else list(mu)
        self.var = spec.var() if var is None else list(var)
        self.Q = math.prod(self.q)
        self._T = {}
        self.P = [
            sum(self.T(k, c + 1) for k in range(1, self.d + 1)) / (1.0 - self.Q)
            for c in range(self.I)
        ]

    def T(self, k: int, j: int) -> float:
        key = (k, j % self.I)
        if key not in self._T:
            self._T[key] = run_term(self.p, self.q, j - 1, k, self.J)
        return self._T[key]

    def Pc(self, n: int) -> float:
        """Award probability of coup n (cam position n - 1)."""
        return self.P[(n - 1) % self.I]

    def mu_c(self, n: int) -> float:
        return self.mu[(n - 1) % self.I]

    def delta(self, i: int, j: int) -> bool:
        return (j - i) % self.J == 0


def run_probabilities(spec: MachineSpec) -> np.ndarray:
    """P[c]: stationary probability that the coup at cam c pays the award."""
    return np.array(_Basic(spec).P)


def _within(b: _Basic, i: int, j: int, award: float) -> float:
    """Cov(R_i*, R_j*) for 1 <= i < j <= I."""
    x = (j - i) / b.J
    Pi, Pj = b.Pc(i), b.Pc(j)
    early = sum(b.T(k, j) for k in below(x))
    first = early - Pj
    second = early * Pi - Pi * Pj
    if b.delta(i, j):
        first += loss_run(b.q, j - 1, j - i)
        m0 = (j - i) // b.J
        second += sum(b.T(k, j) for k in range(m0 + 1, b.d + 1)) + b.Q * Pj
    return award * b.mu_c(i) * first + award**2 * second


def _B(b: _Basic, i: int, j: int) -> float:
    x = b.d + (j - i) / b.J
    out = -b.Pc(j) + sum(b.T(k, j) for k in below(x))
    if b.delta(i, j):
        out += loss_run(b.q, b.I - 1, b.I - i) * loss_run(b.q, j - 1, j)
    return b.mu_c(i) * out


def _C(b: _Basic, i: int, j: int) -> float:
    x = b.d + (j - i) / b.J
    Pi, Pj = b.Pc(i), b.Pc(j)
    out = -Pi * Pj + Pi * sum(b.T(k, j) for k in below(x))
    if b.delta(i, j):
        m0 = (j - i) // b.J
        if j >= i:
            tail = b.Q * sum(b.T(k, j) for k in range(m0 + 1, b.d + 1)) + b.Q**2 * Pj
        else:
            tail = sum(b.T(k, j) for k in range(b.d + m0 + 1, b.d + 1)) + b.Q * Pj
        out += tail
    return out


def _variance(b: _Basic, award: float) -> float:
    diag = sum(
        b.var[c] - 2 * award * b.mu[c] * b.P[c] + award**2 * b.P[c] * (1 - b.P[c])
        for c in range(b.I)
    )
    off = sum(_within(b, i, j, award) for i in range(1, b.I + 1) for j in range(i + 1, b.I + 1))
    return diag + 2 * off


def _cross(b: _Basic, award: float) -> float:
    """Sum over i, j of (award*B_ij + award^2*C_ij), i.e. Cov(S_0*, S_1*)."""
    return sum(
        award * _B(b, i, j) + award**2 * _C(b, i, j)
        for i in range(1, b.I + 1)
        for j in range(1, b.I + 1)
    )


def variance_segment(spec: MachineSpec, award: float | None = None) -> float:
    return _variance(_Basic(spec), spec.J if award is None else award)


def covariance_between_segments(spec: MachineSpec, m: int, award: float | None = None) -> float:
    if m < 1:
        raise ValueError("segment lag m must be >= 1")
    b = _Basic(spec)
    return b.Q ** (m - 1) * _cross(b, spec.J if award is None else award)


def covariance_tail(spec: MachineSpec, award: float | None = None) -> float:
    b = _Basic(spec)
    a = spec.J if award is None else award
    tot = sum(_B(b, i, j) + a * _C(b, i, j) for i in range(1, b.I + 1) for j in range(1, b.I + 1))
    return a / (1 - b.Q) * tot


def _assemble(b: _Basic, award: float) -> CltParameters:
    mu_bar = sum(b.mu) + award * sum(b.P)
    var0 = _variance(b, award)
    cov1 = _cross(b, award)
    tail = cov1 / (1 - b.Q)
    sig = var0 + 2 * tail
    if not sig > 0:
        raise DegenerateVariance(f"sigma_bar^2 = {sig} is not positive")
    return CltParameters(np.array(b.P), mu_bar, var0, cov1, tail, sig, sig / b.I, b.Q)


def clt_parameters(spec: MachineSpec, award: float | None = None) -> CltParameters:
    b = _Basic(spec)
    params = _assemble(b, spec.J if award is None else award)
    check = sum(b.mu[c] + spec.J * b.P[c] for c in range(b.I)) if award is None else params.mu_bar
    if not math.isclose(params.mu_bar, check, rel_tol=1e-12, abs_tol=1e-14):
        raise ArithmeticError("segment mean mismatch")
    return params


def hit_clt_parameters(spec: MachineSpec) -> CltParameters:
    """CLT parameters of the hit count (a coup hits if it pays anything)."""
    ind = make_spec(spec.J, [bernoulli(dist.p) for dist in spec.dists])
    return clt_parameters(ind, award=1)


def award_clt_parameters(spec: MachineSpec) -> CltParameters:
    """CLT parameters of the Futurity-award count."""
    b = _Basic(spec, mu=[0.0] * spec.I, var=[0.0] * spec.I)
    return _assemble(b, 1)

