"""Cyclic cam-index helpers shared by every closed-form computation.

Cam parameters are periodic with period I, so ``p[i]`` for any integer ``i``
(negative or >= I) means ``p[i mod I]``.
"""
from __future__ import annotations

import math
from typing import Sequence


def cyc(i: int, n: int) -> int:
    return i % n


def at(seq: Sequence[float], i: int) -> float:
    return seq[i % len(seq)]


def loss_run(q: Sequence[float], last: int, length: int) -> float:
    """Product of ``length`` consecutive loss probabilities ending at ``last``.

    That is q[last] * q[last-1] * ... * q[last-length+1]; 1 when length == 0.
    """
    out = 1.0
    for t in range(length):
        out *= q[(last - t) % len(q)]
    return out


def run_term(p: Sequence[float], q: Sequence[float], last: int, k: int, J: int) -> float:
    """Probability that a win at ``last - k*J`` is followed by ``k*J`` losses
    ending at cam position ``last``."""
    return loss_run(q, last, k * J) * at(p, last - k * J)


def below(x: float) -> range:
    """Integers k with 1 <= k < x, for real x."""
    return range(1, max(1, math.ceil(x)))
