import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conjugate_lab import series
from conjugate_lab.circle import TWO_PI
from conjugate_lab.errors import AtJump, DomainError, TooExpensive

mp.mp.dps = 30


def _b_oracle(M=2000):
    """``B`` by Euler-Maclaurin from ``M`` on, independent of the library's midpoint rule."""
    phi = lambda y: 1 / (y * mp.log(y))
    head = mp.fsum(phi(k) for k in range(2, M))
    d1 = mp.diff(phi, M, 1)
    d3 = mp.diff(phi, M, 3)
    d5 = mp.diff(phi, M, 5)
    return float(head - mp.log(mp.log(M)) + phi(M) / 2 - d1 / 12 + d3 / 720 - d5 / 30240)


def test_constant_B_matches_euler_maclaurin():
    assert series.constant_B(10 ** 7) == pytest.approx(_b_oracle(), abs=1e-9)
    assert series.constant_B(10 ** 7) > 0


def test_alternating_value_at_pi():
    exact = float(mp.nsum(lambda n: (-1) ** n / (n * mp.log(n)), [2, mp.inf]))
    s = series.loglog_cos_series(np.pi, 1e-5)
    assert abs(s.value - exact) <= s.tail_bound
    assert series.loglog_cos_values(np.pi) == pytest.approx(exact, abs=1e-8)


@settings(max_examples=15, deadline=None)
@given(st.floats(0.3, TWO_PI - 0.3))
def test_tail_bound_honored(x):
    a = series.loglog_cos_series(x, 1e-3)
    b = series.loglog_cos_series(x, 1e-6)
    assert abs(a.value - b.value) <= a.tail_bound + b.tail_bound


@settings(max_examples=15, deadline=None)
@given(st.floats(0.3, TWO_PI - 0.3))
def test_fast_values_within_bound(x):
    s = series.loglog_cos_series(x, 1e-6)
    h = series.loglog_sin_series(x, 0.0, 1e-6)
    assert abs(series.loglog_cos_values(x) - s.value) <= s.tail_bound + 1e-8
    assert abs(2 * series.loglog_sin_values(x) - h.value) <= h.tail_bound + 1e-8


@pytest.mark.parametrize("x", [1e-2, 1e-3])
def test_fast_small_x_matches_direct(x):
    s = series.loglog_cos_series(x, 1e-5)
    assert abs(series.loglog_cos_values(x) - s.value) <= s.tail_bound + 1e-8


@given(st.floats(1e-12, 1e-3))
def test_weak_loglog_lower_bound(x):
    assert series.loglog_cos_values(x) >= 0.5 * np.log(np.log(1 / x))


def test_sine_series_odd_about_t0():
    a = series.loglog_sin_series(3.0, 2.0, 1e-5).value
    b = series.loglog_sin_series(1.0, 2.0, 1e-5).value
    assert a == pytest.approx(-b, abs=1e-4)


def test_domain_and_cost_guards():
    with pytest.raises(DomainError):
        series.loglog_cos_series(0.0)
    with pytest.raises(DomainError):
        series.asymptote(0.5)
    with pytest.raises(TooExpensive):
        series.terms_for(1e-9, 1e-6)


def test_lipschitz_conjugate_matches_clausen():
    # a piecewise linear function with slope changes s_j at k_j has
    # conjugate -(1/pi) sum s_j Cl_2(t - k_j)
    spec = series.JumpSymbolSpec()
    kinks, slopes = spec.kinks()
    t = np.array([0.4, 2.2, 3.0, 3.3, 4.1, 5.9])
    oracle = [-float(sum(s * mp.clsin(2, ti - k) for k, s in zip(kinks, slopes))) / np.pi for ti in t]
    assert np.allclose(series.lipschitz_conjugate(spec, t), oracle, atol=1e-7)


def test_jump_symbol_has_jump_pi():
    spec = series.JumpSymbolSpec()
    eps = 1e-7
    prof = series.jump_profile(spec, np.array([spec.t0 - eps, spec.t0 + eps]))
    assert prof[0] - prof[1] == pytest.approx(np.pi, abs=1e-12)
    # the sine part is continuous at t0 but vanishes only like 1/log(1/|t - t0|)
    d = 10.0 ** -np.arange(3, 12)
    h = series.jump_symbol(spec, spec.t0 + d) - series.jump_profile(spec, spec.t0 + d)
    assert np.all(np.diff(np.abs(h)) < 0)
    assert np.allclose(h * np.log(1 / d), np.pi, rtol=0.2)
    with pytest.raises(AtJump):
        series.jump_symbol(spec, np.array([spec.t0]))


def test_jump_symbol_direct_path_agrees():
    spec = series.JumpSymbolSpec()
    t = spec.t0 + 0.3
    assert series.jump_symbol(spec, t, tol=1e-5) == pytest.approx(
        float(series.jump_symbol(spec, np.array([t]))[0]), abs=2e-4)


def test_exp_conjugate_below_envelope():
    spec = series.JumpSymbolSpec()
    d = 10.0 ** -np.arange(2, 7)
    for sgn in (1, -1):
        e = np.exp(series.jump_conjugate(spec, spec.t0 + sgn * d))
        ratio = e / series.envelope(d)
        assert np.all(ratio < 2 * ratio.min() + 1)
