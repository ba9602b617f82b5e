"""Payout distributions, one-armed machine specs, and the reel-strip model."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Mapping, Sequence

from .errors import BadDist, BadJ, BadPeriod

PROB_TOL = 1e-12

Number = Real  # Fraction or float


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


@dataclass(frozen=True)
class PayoutDistribution:
    """Finite law of the payout of one coup, excluding the Futurity award.

    ``atoms`` is normalised to ascending payout with duplicates merged; that
    ordering is also the inverse-CDF order used by the simulator.
    """

    atoms: tuple[tuple[Number, Number], ...]
    p: Number = field(init=False)
    mu: Number = field(init=False)
    var: Number = field(init=False)

    def __post_init__(self):
        merged: dict = {}
        for payout, prob in self.atoms:
            if payout < 0:
                raise BadDist(f"negative payout {payout}")
            if not 0 < prob <= 1:
                raise BadDist(f"probability {prob} outside (0, 1]")
            merged[payout] = merged.get(payout, 0) + prob
        atoms = tuple(sorted(merged.items()))
        total = sum(pr for _, pr in atoms)
        if all(_is_exact(pr) for _, pr in atoms):
            if total != 1:
                raise BadDist(f"probabilities sum to {total}, not 1")
        elif abs(total - 1) > PROB_TOL:
            raise BadDist(f"probabilities sum to {total}, not 1")
        p = sum(pr for x, pr in atoms if x != 0)
        if not 0 < p < 1:
            raise BadDist(f"nonzero-payout probability p={p} must lie in (0, 1)")
        mu = sum(x * pr for x, pr in atoms)
        var = sum(x * x * pr for x, pr in atoms) - mu * mu
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "var", var)

    @classmethod
    def from_mapping(cls, table: Mapping[Number, Number]) -> "PayoutDistribution":
        return cls(tuple((x, pr) for x, pr in table.items() if pr != 0))

    @property
    def q(self):
        return 1 - self.p

    @property
    def payouts(self) -> list[float]:
        return [float(x) for x, _ in self.atoms]

    @property
    def probs(self) -> list[float]:
        return [float(pr) for _, pr in self.atoms]

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(x) and _is_exact(pr) for x, pr in self.atoms)


def two_point(p, mu) -> PayoutDistribution:
    """Payout ``mu / p`` with probability ``p``, else 0."""
    return PayoutDistribution(((0, 1 - p), (mu / p, p)))


@dataclass(frozen=True)
class MachineSpec:
    """Generalised one-armed Futurity: ``I = d*J`` cam positions."""

    J: int
    dists: tuple[PayoutDistribution, ...]

    @property
    def I(self) -> int:  # noqa: E743
        return len(self.dists)

    @property
    def d(self) -> int:
        return self.I // self.J

    def p(self) -> list[float]:
        return [float(x.p) for x in self.dists]

    def q(self) -> list[float]:
        return [1.0 - float(x.p) for x in self.dists]

    def mu(self) -> list[float]:
        return [float(x.mu) for x in self.dists]

    def var(self) -> list[float]:
        return [float(x.var) for x in self.dists]

    def rotated(self, shift: int) -> "MachineSpec":
        """Cyclic relabelling of cam positions: new position i is old i+shift."""
        n = self.I
        return MachineSpec(self.J, tuple(self.dists[(i + shift) % n] for i in range(n)))


def make_spec(J: int, dists: Sequence[PayoutDistribution]) -> MachineSpec:
    if not isinstance(J, int) or J < 2:
        raise BadJ(f"J must be an integer >= 2, got {J!r}")
    dists = tuple(dists)
    if len(dists) == 0 or len(dists) % J:
        raise BadPeriod(f"cam count {len(dists)} is not a positive multiple of J={J}")
    for k, dist in enumerate(dists):
        if not isinstance(dist, PayoutDistribution):
            raise BadDist(f"cam position {k}: not a PayoutDistribution")
    return MachineSpec(J, dists)


@dataclass(frozen=True)
class MachineState:
    cam: int
    pointer: int


# --- reel strips -----------------------------------------------------------

SYMBOLS = ("lemon", "cherry", "orange", "plum", "bell", "bar")
STRIP_LENGTH = 20
PATTERN_LENGTH = 10


@dataclass(frozen=True)
class ReelMachine:
    """Three 20-stop reel strips, a sparse pay table and the cam mode pattern.

    Strip positions are numbered 1..20 as printed on the machine; mode O uses
    the odd-numbered stops and mode E the even-numbered ones. Triples missing
    from ``paytable`` pay 0.
    """

    reels: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    paytable: Mapping[tuple[int, int, int], int]
    mode_pattern: str

    def __post_init__(self):
        if len(self.reels) != 3:
            raise BadDist("exactly three reels are supported")
        for strip in self.reels:
            if len(strip) != STRIP_LENGTH:
                raise BadDist(f"reel strips must have {STRIP_LENGTH} symbols")
            if any(s not in range(len(SYMBOLS)) for s in strip):
                raise BadDist("reel symbols must be in 0..5")
        if len(self.mode_pattern) != PATTERN_LENGTH or set(self.mode_pattern) - {"E", "O"}:
            raise BadDist("mode pattern must be a length-10 string over {E, O}")
        for key, pay in self.paytable.items():
            if len(key) != 3 or pay < 0:
                raise BadDist(f"bad pay table entry {key}: {pay}")

    def stops(self, mode: str) -> list[tuple[int, ...]]:
        # 1-based odd positions are 0-based even indices
        start = {"O": 0, "E": 1}[mode]
        return [strip[start::2] for strip in self.reels]

    def inventory(self, mode: str) -> list[Counter]:
        return [Counter(s) for s in self.stops(mode)]


def mode_distribution(rm: ReelMachine, mode: str) -> PayoutDistribution:
    counts: Counter = Counter()
    for triple in itertools.product(*rm.stops(mode)):
        counts[rm.paytable.get(triple, 0)] += 1
    total = sum(counts.values())
    probs = {pay: Fraction(k, total) for pay, k in counts.items()}
    p = 1 - probs.get(0, Fraction(0))
    if p in (0, 1):
        raise BadDist(f"mode {mode}: nonzero-payout probability is {p}")
    return PayoutDistribution.from_mapping(probs)


FUTURITY_REELS = (
    (1, 5, 1, 2, 1, 5, 1, 5, 1, 3, 1, 2, 5, 1, 4, 3, 1, 5, 1, 2),
    (1, 4, 1, 3, 1, 4, 1, 2, 1, 4, 1, 4, 1, 2, 1, 2, 4, 1, 5, 4),
    (3, 4, 2, 0, 3, 4, 2, 0, 4, 0, 2, 3, 2, 4, 2, 4, 5, 2, 3, 5),
)

FUTURITY_PAYTABLE = {
    (5, 5, 5): 150,
    (4, 4, 4): 18, (4, 4, 5): 18,
    (3, 3, 3): 14, (3, 3, 5): 14,
    (2, 2, 2): 10, (2, 2, 5): 10,
    (1, 1, 0): 5, (1, 1, 4): 5,
    (1, 1, 2): 3, (1, 1, 3): 3, (1, 1, 5): 3,
}

FUTURITY_PATTERN = "EEEEEOEEEO"


def futurity_reels() -> ReelMachine:
    return ReelMachine(FUTURITY_REELS, dict(FUTURITY_PAYTABLE), FUTURITY_PATTERN)


def spec_from_reels(rm: ReelMachine, J: int | None = None) -> MachineSpec:
    by_mode = {m: mode_distribution(rm, m) for m in set(rm.mode_pattern)}
    return make_spec(J or len(rm.mode_pattern), [by_mode[m] for m in rm.mode_pattern])


def futurity1936() -> MachineSpec:
    """The 1936 Mills Futurity: I = J = 10."""
    return spec_from_reels(futurity_reels())


def uniform_spec(J: int, dist: PayoutDistribution, d: int = 1) -> MachineSpec:
    return make_spec(J, [dist] * (d * J))


def bernoulli(p, payout=1) -> PayoutDistribution:
    return PayoutDistribution(((0, 1 - p), (payout, p)))


