"""Quick invariant suites, one per module, runnable from the command line.

Each check is deterministic (fixed seeds) and takes well under a few
seconds; :func:`run_suite` returns ``(passed, failed, details)``.
"""

from __future__ import annotations

import traceback
from typing import Callable, Dict, List, Tuple

import numpy as np

from . import circle, conjugator, distribution, poisson, series, strip
from .circle import TWO_PI, ArcSet, CircleGrid, GradedGrid, SampledFn, StepSymbol, TrigPoly

Check = Tuple[str, Callable[[], bool]]


def _circle_checks() -> List[Check]:
    rng = np.random.default_rng(7)

    def rho_gap():
        sets = [ArcSet([(0, np.pi)]), ArcSet([(0.3, 1.1), (2.0, 5.0)]), ArcSet([(5.0, 7.0)])]
        return all(circle.essential_range_gap(circle.rho(E)) == 2.0 for E in sets)

    def sample_scaling():
        f = circle.rho(ArcSet([(0.2, 2.9)]))
        g = CircleGrid(64)
        return np.array_equal(circle.sample(f * 2.5, g).values, 2.5 * circle.sample(f, g).values)

    def rotation_measure():
        E = ArcSet([(0.1, 1.0), (3.0, 4.5)])
        return all(abs(E.rotate(phi).measure - E.measure) < 1e-12 for phi in rng.uniform(-7, 7, 20))

    def large_f_gap():
        f = StepSymbol([0, 1.0, 4.0, TWO_PI], [np.pi / 2, 2.0, 1.7])
        g = circle.scale_symbol(f, circle.rho(ArcSet([(0.5, 2.5)])))
        return circle.essential_range_gap(g) >= np.pi

    return [("rho_gap_is_2", rho_gap), ("sample_commutes_with_scaling", sample_scaling),
            ("measure_rotation_invariant", rotation_measure), ("gap_at_least_pi", large_f_gap)]


def _conjugator_checks() -> List[Check]:
    rng = np.random.default_rng(11)

    def anti_involution():
        f = TrigPoly.random_real(12, rng)
        f = f - TrigPoly.constant(f.mean.real)
        cc = conjugator.conjugate_multiplier(conjugator.conjugate_multiplier(f))
        return cc.allclose(-f)

    def linearity():
        f, g = TrigPoly.random_real(10, rng), TrigPoly.random_real(10, rng)
        grid = CircleGrid(256)
        lhs = conjugator.conjugate_grid(SampledFn(grid, f(grid.nodes) * 2 - 3 * g(grid.nodes))).values
        rhs = 2 * conjugator.conjugate_grid(SampledFn(grid, f(grid.nodes))).values \
            - 3 * conjugator.conjugate_grid(SampledFn(grid, g(grid.nodes))).values
        return np.max(np.abs(lhs - rhs)) < 1e-12

    def mean_zero():
        grid = CircleGrid(512)
        f = TrigPoly.random_real(20, rng)
        c1 = conjugator.conjugate_grid(SampledFn(grid, f(grid.nodes))).mean()
        c2 = conjugator.conjugate_multiplier(f).mean
        return abs(c1) < 1e-12 and abs(c2) < 1e-15

    def cross_method():
        f = TrigPoly.random_real(64, rng)
        *_, rep = conjugator.cross_check(f, 4096)
        return rep.cross_error <= 1e-5

    def closed_form():
        f = circle.rho(ArcSet([(0.7, 2.9)]))
        *_, rep = conjugator.cross_check(f, 8192, exclusion=0.1)
        return rep.cross_error <= 1e-3

    def rotation():
        f, phi = TrigPoly.random_real(8, rng), 0.37
        a = conjugator.conjugate_multiplier(f.rotate(phi))
        b = conjugator.conjugate_multiplier(f).rotate(phi)
        return a.allclose(b)

    return [("anti_involution", anti_involution), ("linearity", linearity),
            ("mean_zero", mean_zero), ("cross_method_degree_64", cross_method),
            ("closed_form_vs_pv", closed_form), ("rotation_equivariance", rotation)]


def _poisson_checks() -> List[Check]:
    rng = np.random.default_rng(3)

    def mean_value():
        f = TrigPoly.random_real(6, rng)
        z0, rad = 0.2 + 0.3j, 0.05
        t = TWO_PI * np.arange(64) / 64
        ring = poisson.poisson_extend(f, z0 + rad * np.exp(1j * t))
        return abs(np.mean(ring) - poisson.poisson_extend(f, z0)) < 1e-12

    def real_part_bound():
        f = circle.rho(ArcSet([(0.0, np.pi)])) * (np.pi / 2)
        z = 0.999 * np.sqrt(rng.uniform(0, 1, 200)) * np.exp(1j * rng.uniform(0, TWO_PI, 200))
        return bool(np.all(np.abs(poisson.herglotz(f, z).real) < np.pi / 2))

    def max_principle():
        f = TrigPoly.random_real(5, rng)
        r = np.linspace(0, 0.95, 20)
        t = np.linspace(0, TWO_PI, 64, endpoint=False)
        u = np.abs(poisson.poisson_extend(f, np.multiply.outer(r, np.exp(1j * t))))
        return np.argmax(np.max(u, axis=1)) == len(r) - 1

    def monotone_means():
        f = circle.rho(ArcSet([(0.0, 2.0)])) * 0.6
        curve = poisson.hardy_growth(f, 2.0, [0.1, 0.5, 0.9, 0.99, 0.999])
        return curve.is_monotone()

    def outer_inverse():
        f = circle.rho(ArcSet([(1.0, 2.5)])) * 1.3
        z = 0.9 * np.exp(1j * rng.uniform(0, TWO_PI, 50))
        return np.max(np.abs(poisson.outer_eval(f, z) * poisson.outer_eval(-f, z) - 1)) < 1e-10

    return [("mean_value_property", mean_value), ("real_part_below_sup", real_part_bound),
            ("maximum_principle", max_principle), ("hardy_means_monotone", monotone_means),
            ("outer_times_inverse_is_one", outer_inverse)]


def _strip_checks() -> List[Check]:
    rng = np.random.default_rng(5)
    x = rng.uniform(-1.5, 1.5, 200)
    y = rng.uniform(-5, 10, 200)
    lam = rng.uniform(0, 5, 200)

    def in_range():
        g = strip.g_lambda(x + 1j * y, lam)
        return bool(np.all((g > 0) & (g < 1)))

    def harmonic():
        def lap(h):
            z = 0.4 + 1.7j
            c = [strip.g_lambda(z + d, 1.0) for d in (h, -h, 1j * h, -1j * h)]
            return abs(sum(c) - 4 * strip.g_lambda(z, 1.0)) / h ** 2
        return lap(1e-2) / lap(1e-3) > 10 or lap(1e-2) < 1e-6

    def symmetric():
        return np.max(np.abs(strip.g_lambda(x + 1j * y, 2.0) - strip.g_lambda(-x + 1j * y, 2.0))) < 1e-15

    def increasing():
        ys = np.linspace(-3, 8, 200)
        g = strip.g_lambda(0.7 + 1j * ys, 1.5)
        return bool(np.all(np.diff(g) > 0))

    def lower_bound():
        xs = rng.uniform(-1.5, 1.5, 100)
        s = rng.uniform(1, 20, 100)
        lv = 2.0
        g = strip.g_lambda(xs + 1j * (lv + 2 - s), lv)
        return bool(np.all(g >= np.cos(xs) * np.exp(-s) / np.pi))

    return [("range_open_unit_interval", in_range), ("discrete_laplacian_small", harmonic),
            ("even_in_x", symmetric), ("increasing_in_y", increasing),
            ("exponential_lower_bound", lower_bound)]


def _series_checks() -> List[Check]:
    def honors_bound():
        for x in (0.5, 2.0, 4.0):
            a = series.loglog_cos_series(x, 1e-4)
            b = series.loglog_cos_series(x, 1e-5)
            if abs(a.value - b.value) >= a.tail_bound:
                return False
        return True

    def weak_lower():
        xs = np.array([1e-4, 1e-6, 1e-9, 1e-12])
        return bool(np.all(series.loglog_cos_values(xs) >= 0.5 * np.log(np.log(1 / xs))))

    def bounded_symbol():
        spec = series.JumpSymbolSpec()
        t = np.linspace(0.01, TWO_PI - 0.01, 301)
        t = t[np.abs(t - spec.t0) > 1e-9]
        hmax = 2 * np.max(np.abs(series.loglog_sin_values(np.linspace(1e-6, TWO_PI - 1e-6, 2001))))
        return bool(np.all(np.abs(series.jump_symbol(spec, t)) <= np.pi / 2 + hmax + 1e-9))

    def additivity():
        spec = series.JumpSymbolSpec()
        t = np.array([0.5, 2.0, 3.0, 3.3, 5.0])
        y = t - spec.t0
        parts = (-np.log(np.abs(2 * np.sin(y / 2))) + series.lipschitz_conjugate(spec, t)
                 - 2 * series.loglog_cos_values(np.abs(y)))
        return np.max(np.abs(parts - series.jump_conjugate(spec, t))) < 1e-12

    return [("tail_bound_honored", honors_bound), ("weak_loglog_lower_bound", weak_lower),
            ("jump_symbol_bounded", bounded_symbol), ("conjugate_additivity", additivity)]


def _distribution_checks() -> List[Check]:
    E = ArcSet([(0.0, np.pi)])

    def monotone():
        vals = distribution.conjugate_on_graded(circle.rho(E) * (np.pi / 2), 20)
        c = distribution.distribution_curve(vals, distribution.default_lambdas())
        return bool(np.all(np.diff(c.measures) <= 0))

    def two_valued():
        g = E.indicator()
        vals = circle.sample(g, CircleGrid(256))
        expv = SampledFn(vals.grid, np.exp(vals.values))
        lc = distribution.layer_cake(distribution.empirical_curve(expv))
        return abs(lc - (np.pi * np.e + np.pi)) < 1e-12

    def slow_decay():
        symbols = [StepSymbol.constant(np.pi / 2), StepSymbol.constant(2.0),
                   StepSymbol([0, 2.0, TWO_PI], [np.pi / 2, 1.9])]
        lam = distribution.default_lambdas()
        for f in symbols:
            g = circle.scale_symbol(f, circle.rho(ArcSet([(0.0, 2.5)])))
            vals = distribution.conjugate_on_graded(g, 40)
            if distribution.fit_decay(distribution.distribution_curve(vals, lam)).alpha > 1.1:
                return False
        return True

    def zygmund():
        sets = [ArcSet([(0, np.pi)]), ArcSet([(0, 0.1)]), ArcSet([(1, 2), (3, 5)])]
        lam = np.arange(0, 6.01, 0.5)
        return all(all(distribution.zygmund_upper_check(S, lam)) for S in sets)

    return [("curve_nonincreasing", monotone), ("two_valued_layer_cake", two_valued),
            ("half_pi_decay_rate", slow_decay), ("zygmund_upper_bound", zygmund)]


SUITES: Dict[str, Callable[[], List[Check]]] = {
    "circle": _circle_checks,
    "conjugator": _conjugator_checks,
    "poisson": _poisson_checks,
    "strip": _strip_checks,
    "series": _series_checks,
    "distribution": _distribution_checks,
}


def run_suite(name: str):
    passed, failed, details = 0, 0, []
    for label, check in SUITES[name]():
        try:
            ok = bool(check())
            err = None
        except Exception:  # a crashing check counts as a failure
            ok, err = False, traceback.format_exc(limit=2)
        passed += ok
        failed += not ok
        details.append({"check": label, "ok": ok, **({"error": err} if err else {})})
    return passed, failed, details
