import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conjugate_lab import circle, poisson
from conjugate_lab.circle import TWO_PI, ArcSet, CircleGrid, SampledFn, TrigPoly
from conjugate_lab.errors import AtBreakpoint, TooCloseToBoundary

disk = st.tuples(st.floats(0, 0.95), st.floats(0, TWO_PI)).map(lambda p: p[0] * np.exp(1j * p[1]))


def _herglotz_oracle(f, z):
    # (1/2pi) int f(s) (e^{is} + z)/(e^{is} - z) ds by adaptive quadrature
    z = mp.mpc(z)
    k = lambda s: (mp.expj(s) + z) / (mp.expj(s) - z)
    peak = float(np.mod(np.angle(complex(z)), TWO_PI))
    pieces = zip(f.breakpoints[:-1], f.breakpoints[1:], f.values)
    split = lambda a, b: [a, peak, b] if a < peak < b else [a, b]
    return complex(sum(c * mp.quad(k, split(a, b)) for a, b, c in pieces) / (2 * mp.pi))


@pytest.mark.parametrize("z", [0.3 + 0.2j, -0.7j, 0.95 * np.exp(2.0j)])
def test_step_herglotz_matches_quadrature(z):
    f = circle.rho(ArcSet([(0.4, 2.5)])) * 1.3
    assert poisson.herglotz(f, z) == pytest.approx(_herglotz_oracle(f, z), abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), disk)
def test_poly_herglotz_matches_grid(seed, z):
    f = TrigPoly.random_real(6, np.random.default_rng(seed))
    g = SampledFn(CircleGrid(4096), f(CircleGrid(4096).nodes))
    assert abs(poisson.herglotz(f, z) - poisson.herglotz(g, z)) < 1e-9


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.tuples(st.floats(-0.6, 0.6), st.floats(-0.6, 0.6)))
def test_mean_value_property(seed, c):
    f = TrigPoly.random_real(5, np.random.default_rng(seed))
    z0 = complex(*c)
    ring = poisson.poisson_extend(f, z0 + 0.05 * np.exp(1j * TWO_PI * np.arange(64) / 64))
    assert abs(np.mean(ring) - poisson.poisson_extend(f, z0)) < 1e-12


def test_herglotz_imaginary_part_vanishes_at_origin():
    f = circle.rho(ArcSet([(1.0, 2.0)]))
    assert abs(poisson.herglotz(f, 0.0).imag) < 1e-15


def test_radial_probe_tends_to_conjugate():
    from conjugate_lab.conjugator import conjugate_step_exact
    f = circle.rho(ArcSet([(0.0, np.pi)])) * (np.pi / 2)
    probe = poisson.radial_probe(f, 1.0, [0.9, 0.99, 0.999, 0.9999])
    target = conjugate_step_exact(f, np.array([1.0]))[0]
    errs = np.abs(probe.values.imag - target)
    assert errs[-1] < 1e-3 and np.all(np.diff(errs) < 0)


def test_radial_probe_rejects_jump():
    with pytest.raises(AtBreakpoint):
        poisson.radial_probe(circle.rho(ArcSet([(0.0, np.pi)])), np.pi, [0.5])


def test_sampled_herglotz_guard():
    g = SampledFn(CircleGrid(64), np.ones(64))
    with pytest.raises(TooCloseToBoundary):
        poisson.herglotz(g, 0.99)


def test_outer_modulus():
    f = circle.rho(ArcSet([(1.0, 2.5)])) * 1.3
    z = 0.8 * np.exp(1j * np.linspace(0, 6, 11))
    X = poisson.herglotz(f, z)
    assert np.allclose(np.abs(poisson.outer_eval(f, z)), np.exp(-X.imag / 2))


def test_hardy_means_monotone_and_bounded_case():
    f = circle.rho(ArcSet([(0.0, np.pi)])) * (np.pi / 4)
    c = poisson.hardy_growth(f, 2.0, [0.0, 0.5, 0.9, 0.99, 0.999])
    assert c.is_monotone()
    assert c.means[0] == pytest.approx(1.0)


def test_interpolant_reproduces_samples():
    grid = CircleGrid(32)
    v = np.random.default_rng(2).normal(size=32)
    p = poisson.interpolant(SampledFn(grid, v))
    assert np.allclose(np.real(p(grid.nodes)), v)


def test_hardy_mean_matches_adaptive_quadrature():
    f = circle.rho(ArcSet([(0.0, np.pi)])) * (np.pi / 2)
    r = 0.999
    integrand = lambda t: mp.exp(-poisson.herglotz(f, r * np.exp(1j * float(t))).imag)
    pts = [0, 0.01, np.pi - 0.01, np.pi, np.pi + 0.01, TWO_PI - 0.01, TWO_PI]
    oracle = float(mp.quad(integrand, pts, maxdegree=10) / (2 * mp.pi))
    assert poisson.hardy_growth(f, 2.0, [r]).means[0] == pytest.approx(oracle, rel=1e-8)


def test_hardy_means_grow_logarithmically_at_half_pi():
    # growth per decade of 1/(1-r) settles near 2 ln(10)/pi
    f = circle.rho(ArcSet([(0.0, np.pi)])) * (np.pi / 2)
    m = poisson.hardy_growth(f, 2.0, [1 - 1e-4, 1 - 1e-5, 1 - 1e-6]).means
    assert np.allclose(np.diff(m), 2 * np.log(10) / np.pi, rtol=1e-3)
