import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from futurity.errors import BadK
from futurity.machine import two_point
from futurity.strategies import (
    Mixture,
    Pattern,
    PointerThreshold,
    SingleArm,
    TwoArmedSpec,
    arm_mean,
    mixture_mean,
    pattern_mean,
    pointer_mean,
)
from futurity.twoarm import (
    default_roster,
    expected_casino_profit,
    profit_curves,
    strategy_chain,
    strategy_mean,
)

from conftest import probs

words = st.text("AB", min_size=2, max_size=5).filter(lambda w: "A" in w and "B" in w)


@settings(max_examples=30)
@given(probs(), probs(), st.integers(2, 8), probs(0.01, 0.3), probs(0.01, 0.3), words, st.data())
def test_chain_matches_closed_forms(pA, pB, J, muA, muB, D, data):
    spec2 = TwoArmedSpec(two_point(pA, muA), two_point(pB, muB), J)
    K = data.draw(st.integers(1, J - 1))
    g = data.draw(probs())
    assert strategy_mean(spec2, SingleArm("A")) == pytest.approx(arm_mean(spec2, "A"), abs=1e-10)
    assert strategy_mean(spec2, Mixture(g)) == pytest.approx(mixture_mean(spec2, g), abs=1e-10)
    assert strategy_mean(spec2, Pattern(D)) == pytest.approx(pattern_mean(spec2, D), abs=1e-10)
    assert strategy_mean(spec2, PointerThreshold(K)) == pytest.approx(pointer_mean(spec2, K), abs=1e-10)


def test_rows_stochastic():
    spec2 = TwoArmedSpec.fair(0.3, 1 / 15, 10)
    for _, strat in default_roster():
        ch = strategy_chain(spec2, strat)
        assert np.allclose(ch.P.sum(axis=1), 1)


def test_first_coup_profit():
    spec2 = TwoArmedSpec.fair(0.3, 1 / 15, 10)
    curve = expected_casino_profit(spec2, SingleArm("B"), 3)
    assert curve[0] == pytest.approx(1 - float(spec2.arm_B.mu))


def test_profit_slope_tends_to_gap():
    spec2 = TwoArmedSpec.fair(0.3, 1 / 15, 10)
    c = expected_casino_profit(spec2, Mixture(0.5), 3000)
    assert c[-1] - c[-2] == pytest.approx(1 - mixture_mean(spec2, 0.5), abs=1e-9)


def test_profit_curve_ordering():
    rows = profit_curves(0.3, 1 / 15, 10, 500)
    final = {label: v for t, label, v in rows if t == 500}
    assert final["pointer K=4"] < 0
    for label in ("mixture 1/2", "AB", "ABB", "AABB"):
        assert final[label] > 0
    assert abs(final["A"]) < 5 and abs(final["B"]) < 5


def test_bad_K():
    with pytest.raises(BadK):
        strategy_chain(TwoArmedSpec.fair(0.3, 0.1, 5), PointerThreshold(5))
