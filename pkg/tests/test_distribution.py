from types import SimpleNamespace

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conjugate_lab import circle, distribution as dist
from conjugate_lab.circle import TWO_PI, ArcSet, CircleGrid, SampledFn, StepSymbol
from conjugate_lab.errors import InsufficientSupport, WeightMismatch
from conjugate_lab.series import JumpSymbolSpec

HALF = circle.rho(ArcSet([(0.0, np.pi)])) * (np.pi / 2)


def exp_abs_oracle(lam):
    """``int exp(lam |log|tan(t/2)||) dt`` over the circle.

    Equals ``8 int_0^1 u^-lam/(1+u^2) du``; with ``s = 1 - lam`` the integral
    is ``(psi((s+2)/4) - psi(s/4))/4``.
    """
    s = 1 - mp.mpf(lam)
    return float(2 * (mp.digamma((s + 2) / 4) - mp.digamma(s / 4)))


def test_distribution_matches_arctan_formula():
    vals = dist.conjugate_on_graded(HALF, 40, n_base=1 << 14)
    lam = np.array([1.0, 3.0, 6.0])
    c = dist.distribution_curve(vals, lam)
    assert np.allclose(c.measures, 4 * np.arctan(np.exp(-lam)), rtol=0.05)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_curve_nonincreasing(seed):
    v = np.random.default_rng(seed).standard_cauchy(256)
    c = dist.distribution_curve(SampledFn(CircleGrid(256), v), np.linspace(-5, 5, 41))
    assert np.all(np.diff(c.measures) <= 0)
    assert c.measures[0] <= TWO_PI + 1e-12


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_layer_cake_exact_on_empirical_curve(seed):
    v = np.abs(np.random.default_rng(seed).normal(size=128))
    g = SampledFn(CircleGrid(128), v)
    assert dist.layer_cake(dist.empirical_curve(g)) == pytest.approx(np.sum(g.weights * v), rel=1e-12)


@pytest.mark.parametrize("lam", [0.5, 0.9])
def test_corrected_exp_integral_matches_oracle(lam):
    vals = dist.conjugate_on_graded(HALF, 40)
    ei = dist.exp_integral(vals, scale=lam, absolute=True)
    assert not ei.divergent
    assert ei.value == pytest.approx(exp_abs_oracle(lam), rel=1e-6)


def test_exp_integral_flags_log_divergence():
    vals = dist.conjugate_on_graded(HALF, 30)
    assert dist.exp_integral(vals).divergent


def test_fit_decay_recovers_rate():
    vals = dist.conjugate_on_graded(HALF, 40)
    fit = dist.fit_decay(dist.distribution_curve(vals, dist.default_lambdas()))
    assert 0.9 <= fit.alpha <= 1.1


def test_fit_decay_needs_support():
    g = SampledFn(CircleGrid(64), np.zeros(64))
    with pytest.raises(InsufficientSupport):
        dist.fit_decay(dist.distribution_curve(g, dist.default_lambdas()))


@pytest.mark.parametrize("arcs", [[(0, np.pi)], [(0, 0.1)], [(1, 2), (3, 5)], [(0.5, 6.0)], [(2, 2.5)]])
def test_zygmund_upper_bound(arcs):
    assert all(dist.zygmund_upper_check(ArcSet(arcs), np.arange(0, 6.01, 0.5)))


def test_verdict_constant_and_small_jumps():
    v = dist.verdict(1.0, ArcSet.full())
    assert (v.verdict, v.theorem) == ("integrable", "constant")
    v = dist.verdict(np.pi / 4, ArcSet([(0, np.pi)]))
    assert (v.verdict, v.theorem) == ("integrable", "jumps_below_pi")


def test_verdict_non_integrable_at_half_pi():
    v = dist.verdict(1.5707963, ArcSet([(0, 3.14159265)]))
    assert v.verdict == "non_integrable"
    assert 0.85 <= v.alpha <= 1.15
    assert '"verdict": "non_integrable"' in v.dumps()


def test_verdict_jump_symbol_inconclusive():
    v = dist.verdict(JumpSymbolSpec(), ArcSet.full())
    assert v.verdict == "inconclusive"
    with pytest.raises(ValueError):
        dist.verdict(JumpSymbolSpec(), ArcSet([(0, 1)]))


def test_weight_mismatch_rejected():
    # samples whose cell widths do not cover the circle
    bad = SimpleNamespace(weights=np.ones(8), values=np.ones(8))
    with pytest.raises(WeightMismatch):
        dist.distribution_curve(bad, [0.0])
