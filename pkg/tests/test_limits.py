import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from futurity import equilibrium as eq
from futurity.limits import (
    award_clt_parameters,
    clt_parameters,
    covariance_between_segments,
    covariance_tail,
    hit_clt_parameters,
    run_probabilities,
    variance_segment,
)
from futurity.machine import PayoutDistribution, futurity1936, make_spec, two_point

from conftest import machine_specs
from oracles import enumerated_moments, moment_dp


def test_futurity_parameters():
    par = clt_parameters(futurity1936())
    assert par.mu_star == pytest.approx(0.8388112050837714, abs=1e-14)
    assert par.var_S0 == pytest.approx(69.86035093947254, abs=1e-9)
    assert par.cov_tail == pytest.approx(-0.9510876098563938, abs=1e-11)
    assert par.sigma_star_sq == pytest.approx(6.7958175719759755, abs=1e-10)
    assert par.sigma_bar_sq == pytest.approx(par.var_S0 + 2 * par.cov_tail)


def test_futurity_against_dp():
    spec = futurity1936()
    par = clt_parameters(spec)
    m, v0, v1, c = moment_dp(spec, 2)
    assert m == pytest.approx(par.mu_bar, abs=1e-12)
    assert v0 == pytest.approx(par.var_S0, abs=1e-9)
    assert v1 == pytest.approx(par.var_S0, abs=1e-9)
    assert c == pytest.approx(par.cov1, abs=1e-11)


def test_run_probabilities_sum_to_award_rate():
    spec = futurity1936()
    P = run_probabilities(spec)
    assert np.all((P > 0) & (P < 1))
    assert P.mean() == pytest.approx(eq.stationary_closed_form(spec).p_award, abs=1e-15)


def test_two_by_two_enumeration():
    spec = make_spec(2, [
        PayoutDistribution(((0, 0.55), (1, 0.3), (4, 0.15))),
        PayoutDistribution(((0, 0.35), (2, 0.65))),
    ])
    mean, cov = enumerated_moments(spec, 3)
    par = clt_parameters(spec)
    assert mean[0] == pytest.approx(par.mu_bar, abs=1e-12)
    assert cov[0, 0] == pytest.approx(par.var_S0, abs=1e-12)
    assert cov[0, 1] == pytest.approx(par.cov1, abs=1e-12)
    assert cov[0, 2] == pytest.approx(par.Q * par.cov1, abs=1e-12)


@settings(max_examples=40)
@given(machine_specs(d=st.integers(1, 3)))
def test_segment_moments_match_dp(spec):
    par = clt_parameters(spec)
    m, v0, _, c1 = moment_dp(spec, 2)
    _, _, _, c2 = moment_dp(spec, 3)
    scale = max(1.0, abs(par.var_S0))
    assert m == pytest.approx(par.mu_bar, abs=1e-11 * scale)
    assert v0 == pytest.approx(par.var_S0, abs=1e-10 * scale)
    assert c1 == pytest.approx(par.cov1, abs=1e-10 * scale)
    assert c2 == pytest.approx(covariance_between_segments(spec, 2), abs=1e-10 * scale)
    assert par.cov_tail == pytest.approx(covariance_tail(spec), abs=1e-10 * scale)
    assert variance_segment(spec) == pytest.approx(par.var_S0)


@settings(max_examples=25)
@given(machine_specs())
def test_hit_and_award_counts(spec):
    hit = hit_clt_parameters(spec)
    m, v0, _, c1 = moment_dp(spec, 2, award=1, value=lambda x: 1 if x > 0 else 0)
    assert m == pytest.approx(hit.mu_bar, abs=1e-11)
    assert v0 == pytest.approx(hit.var_S0, abs=1e-11)
    assert c1 == pytest.approx(hit.cov1, abs=1e-11)
    aw = award_clt_parameters(spec)
    m, v0, _, c1 = moment_dp(spec, 2, award=1, value=lambda x: 0)
    assert m == pytest.approx(aw.mu_bar, abs=1e-12)
    assert v0 == pytest.approx(aw.var_S0, abs=1e-11)
    assert c1 == pytest.approx(aw.cov1, abs=1e-11)


def test_award_size_is_a_parameter():
    spec = make_spec(3, [two_point(0.2, 0.5), two_point(0.4, 0.5), two_point(0.3, 0.9)])
    for award in (0.0, 1.0, 7.5):
        par = clt_parameters(spec, award=award)
        m, v0, _, c1 = moment_dp(spec, 2, award=award)
        assert m == pytest.approx(par.mu_bar, abs=1e-12)
        assert v0 == pytest.approx(par.var_S0, abs=1e-11)
        assert c1 == pytest.approx(par.cov1, abs=1e-11)


def test_bad_lag():
    with pytest.raises(ValueError):
        covariance_between_segments(futurity1936(), 0)
