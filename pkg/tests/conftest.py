import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import settings, strategies as st

from futurity.machine import PayoutDistribution, make_spec

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def payout_dists(draw, exact=False):
    """Finite payout law with 1-3 nonzero atoms and p bounded away from 0, 1."""
    k = draw(st.integers(1, 3))
    pays = draw(st.lists(st.integers(1, 20), min_size=k, max_size=k, unique=True))
    if exact:
        ws = draw(st.lists(st.integers(1, 30), min_size=k + 1, max_size=k + 1))
        tot = sum(ws)
        probs = [Fraction(w, tot) for w in ws]
    else:
        ws = draw(st.lists(st.floats(0.05, 1.0), min_size=k + 1, max_size=k + 1))
        tot = sum(ws)
        probs = [w / tot for w in ws]
        probs[0] = 1.0 - sum(probs[1:])
    return PayoutDistribution(((0, probs[0]), *zip(pays, probs[1:])))


@st.composite
def machine_specs(draw, J=st.integers(2, 6), d=st.integers(1, 3), exact=False):
    J_, d_ = draw(J), draw(d)
    return make_spec(J_, [draw(payout_dists(exact=exact)) for _ in range(J_ * d_)])


def probs(lo=0.05, hi=0.95):
    return st.floats(lo, hi, allow_nan=False)
