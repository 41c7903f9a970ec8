"""Distribution functions of sampled conjugates, layer-cake integrals,
exponential decay fits and an integrability verdict for ``exp`` of the
conjugate of ``f * rho_E``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .circle import (
    TWO_PI,
    ArcSet,
    GradedGrid,
    SampledFn,
    StepSymbol,
    essential_range_gap,
    rho,
    scale_symbol,
)
from .conjugator import conjugate_step_on_grid
from .errors import InsufficientSupport, WeightMismatch
from .series import JumpSymbolSpec, jump_conjugate_on_grid

WEIGHT_TOL = 1e-9
ALPHA_TOL = 0.15
GROWTH_RATIO = 1.5
MIN_CELLS = 10
THRESHOLD_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class DistributionCurve:
    """``m(lambda_k) = |{t : g(t) > lambda_k}|`` with the number of supporting cells."""

    lambdas: np.ndarray
    measures: np.ndarray
    counts: Optional[np.ndarray] = None

    def __post_init__(self):
        lam = np.asarray(self.lambdas, float)
        m = np.asarray(self.measures, float)
        if lam.shape != m.shape or lam.ndim != 1:
            raise ValueError("lambdas and measures must be 1-d and equally long")
        if np.any(np.diff(lam) <= 0):
            raise ValueError("lambdas must increase strictly")
        if np.any(m < -1e-12) or np.any(m > TWO_PI * (1 + 1e-12)):
            raise ValueError("measures must lie in [0, 2 pi]")
        if np.any(np.diff(m) > 1e-12):
            raise ValueError("measures must be nonincreasing")
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "measures", np.clip(m, 0.0, TWO_PI))
        if self.counts is not None:
            object.__setattr__(self, "counts", np.asarray(self.counts, int))

    def to_json(self) -> dict:
        out = {"lambdas": self.lambdas.tolist(), "measures": self.measures.tolist()}
        if self.counts is not None:
            out["counts"] = self.counts.tolist()
        return out


def _check_weights(w: np.ndarray):
    total = float(np.sum(w))
    if abs(total - TWO_PI) > WEIGHT_TOL:
        raise WeightMismatch(f"cell weights sum to {total!r}, not 2 pi")


def distribution_curve(values: SampledFn, lambdas: Sequence[float]) -> DistributionCurve:
    """Measure of ``{value > lambda}`` as the total width of the cells above each level."""
    w = values.weights
    _check_weights(w)
    v = np.asarray(values.values, float)
    lam = np.asarray(lambdas, float)
    order = np.argsort(v)
    vs, ws = v[order], w[order]
    # suffix sums of weights over sorted values: cells strictly above lambda
    tail = np.append(np.cumsum(ws[::-1])[::-1], 0.0)
    first = np.searchsorted(vs, lam, side="right")
    return DistributionCurve(lam, tail[first], len(v) - first)


def empirical_curve(values: SampledFn) -> DistributionCurve:
    """Distribution of nonnegative samples on all of their own levels (plus 0)."""
    v = np.asarray(values.values, float)
    if np.any(v < 0):
        raise ValueError("empirical curves are for nonnegative samples")
    levels = np.unique(np.concatenate([[0.0], v]))
    return distribution_curve(values, levels)


def layer_cake(curve: DistributionCurve) -> float:
    """``int_0^{lambda_max} m(lambda) d lambda`` with the right-continuous step rule.

    ``m`` is right-continuous and nonincreasing, so ``m(lambda_k)`` is its
    value on all of ``[lambda_k, lambda_{k+1})`` when the levels are the
    sampled values themselves (see :func:`empirical_curve`); the rule is then
    exact. On coarser level grids it is an upper sum. ``m`` is taken to be
    ``2 pi`` below the first level. Use :func:`layer_cake_tail` to judge the
    mass left above the last level.
    """
    lam, m = curve.lambdas, curve.measures
    head = TWO_PI * max(lam[0], 0.0)
    return float(head + np.sum(m[:-1] * np.diff(lam)))


def layer_cake_tail(curve: DistributionCurve, rel: float = 1e-3) -> Tuple[float, bool]:
    """Estimated ``int_{lambda_max}^inf m`` from the slope of the last decade
    of ``log m``, and whether it exceeds ``rel`` times the truncated integral."""
    lam, m = curve.lambdas, curve.measures
    if m[-1] <= 0:
        return 0.0, False
    pos = m > 0
    k = max(2, int(pos.sum()) // 10)
    ll, lm = lam[pos][-k:], np.log(m[pos][-k:])
    slope = np.polyfit(ll, lm, 1)[0] if len(ll) >= 2 and np.ptp(ll) > 0 else 0.0
    est = np.inf if slope >= 0 else float(m[-1] / -slope)
    return est, bool(est > rel * layer_cake(curve))


@dataclass(frozen=True)
class ExpIntegral:
    """``int exp(g)`` over the circle from graded samples.

    ``raw`` is the plain cell sum, i.e. the layer-cake integral of the
    empirical distribution. ``value`` integrates exactly the power law
    through each pair of neighbouring nodes on one side of an anchor, uses
    the trapezoid rule elsewhere, and closes the gap between an anchor and
    its innermost nodes with the power law ``c |t - a|^{-mu}`` fitted to the
    three innermost nodes. ``divergent`` is set when some fitted ``mu``
    reaches 1, and ``value`` is then infinite.
    """

    value: float
    raw: float
    divergent: bool
    exponents: Tuple[float, ...] = ()


def _power_segment(d1, e1, d2, e2):
    """``int_{d1}^{d2}`` of the power law through ``(d1, e1)`` and ``(d2, e2)``."""
    lr = np.log(d2 / d1)
    k = 1.0 + np.log(e2 / e1) / lr  # 1 - mu
    small = np.abs(k * lr) < 1e-12
    ks = np.where(small, 1.0, k)
    return np.where(small, e1 * d1 * lr, e1 * d1 * np.expm1(ks * lr) / ks)


def exp_integral(values: SampledFn, scale: float = 1.0, absolute: bool = False) -> ExpIntegral:
    """``int exp(scale * g)`` (or ``exp(scale * |g|)``) over the circle."""
    grid = values.grid
    _check_weights(grid.weights)
    g = np.asarray(values.values, float)
    e = np.exp(scale * (np.abs(g) if absolute else g))
    raw = float(np.sum(grid.weights * e))
    if not isinstance(grid, GradedGrid) or not grid.anchors:
        return ExpIntegral(raw, raw, False)

    nxt = np.roll(np.arange(grid.n), -1)
    near, delta = grid.near, grid.delta
    paired = (near >= 0) & (near == near[nxt]) & (delta * delta[nxt] > 0) \
        & (np.abs(delta[nxt] - delta) < 1.0)
    gap = np.where(paired, np.abs(delta[nxt] - delta), np.mod(grid.nodes[nxt] - grid.nodes, TWO_PI))
    trap = 0.5 * gap * (e + e[nxt])
    d1 = np.minimum(np.abs(delta), np.abs(delta[nxt]))
    d2 = np.maximum(np.abs(delta), np.abs(delta[nxt]))
    e1 = np.where(np.abs(delta) < np.abs(delta[nxt]), e, e[nxt])
    e2 = np.where(np.abs(delta) < np.abs(delta[nxt]), e[nxt], e)
    with np.errstate(divide="ignore", invalid="ignore"):
        power = _power_segment(np.where(paired, d1, 1.0), np.where(paired, e1, 1.0),
                               np.where(paired, d2, 2.0), np.where(paired, e2, 1.0))
    segments = np.where(paired & (e > 0) & (e[nxt] > 0), power, trap)
    # the segment straddling each anchor is replaced by the two end pieces
    straddle = (near >= 0) & (near == near[nxt]) & (delta < 0) & (delta[nxt] > 0) \
        & (np.abs(delta[nxt] - delta) < 1.0)
    value = float(np.sum(segments[~straddle]))

    divergent, mus = False, []
    for a in range(len(grid.anchors)):
        for side in (-1, 1):
            idx = grid.anchor_side(a, side)[-3:]
            d = np.abs(delta[idx])
            slope, logc = np.polyfit(np.log(d), np.log(e[idx]), 1)
            mu = -slope
            mus.append(float(mu))
            if mu >= 1 - 1e-6:
                divergent = True
                continue
            value += np.exp(logc) * d[-1] ** (1 - mu) / (1 - mu)
    return ExpIntegral(np.inf if divergent else value, raw, divergent, tuple(mus))


@dataclass(frozen=True)
class DecayFit:
    """``log m(lambda) ~ log C - alpha * lambda`` on ``window``."""

    C: float
    alpha: float
    residual: float
    window: Tuple[float, float]

    def to_json(self) -> dict:
        return {"C": self.C, "alpha": self.alpha, "residual": self.residual,
                "window": list(self.window)}


def fit_decay(curve: DistributionCurve, window: Tuple[float, float] = (1.0, 6.0)) -> DecayFit:
    """Least-squares line through ``(lambda, log m)`` on the window."""
    lo, hi = window
    sel = (curve.lambdas >= lo - 1e-12) & (curve.lambdas <= hi + 1e-12)
    if sel.sum() < 2:
        raise InsufficientSupport("fewer than two levels in the fit window")
    m = curve.measures[sel]
    if np.any(m <= 0):
        raise InsufficientSupport("a level in the fit window has empty super-level set")
    if curve.counts is not None and np.any(curve.counts[sel] < MIN_CELLS):
        raise InsufficientSupport(f"a level in the fit window is carried by < {MIN_CELLS} cells")
    lam = curve.lambdas[sel]
    A = np.column_stack([np.ones_like(lam), -lam])
    coef, *_ = np.linalg.lstsq(A, np.log(m), rcond=None)
    res = np.log(m) - A @ coef
    return DecayFit(float(np.exp(coef[0])), float(coef[1]),
                    float(np.sqrt(np.mean(res ** 2))), (float(lo), float(hi)))


def _chi_conjugate(E: ArcSet, depth: int, n_base: int) -> SampledFn:
    grid = GradedGrid(tuple(E.endpoints), depth=depth, n_base=n_base)
    return conjugate_step_on_grid(E.indicator(), grid)


def zygmund_upper_check(E: ArcSet, lambdas: Sequence[float], depth: int = 40,
                        n_base: int = 4096) -> list:
    """``|{|chi~_E| > 2 lambda/pi}| < 10 pi exp(-2 lambda)`` at every level."""
    m = E.measure
    if not 0 < m < TWO_PI:
        raise ValueError("need 0 < |E| < 2 pi")
    conj = _chi_conjugate(E, depth, n_base)
    absval = SampledFn(conj.grid, np.abs(conj.values))
    lam = np.asarray(lambdas, float)
    curve = distribution_curve(absval, 2 * lam / np.pi)
    return [bool(x) for x in curve.measures < 10 * np.pi * np.exp(-2 * lam)]


# ---------------------------------------------------------------------------
# verdicts

VERDICTS = ("integrable", "non_integrable", "inconclusive")


@dataclass(frozen=True)
class IntegrabilityVerdict:
    verdict: str
    theorem: str
    alpha: Optional[float] = None
    C: Optional[float] = None
    evidence: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "theorem": self.theorem, "alpha": self.alpha,
                "C": self.C, "evidence": self.evidence}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def default_lambdas() -> np.ndarray:
    return np.linspace(0.0, 6.0, 61)


def conjugate_on_graded(symbol: Union[StepSymbol, JumpSymbolSpec], depth: int = 40,
                        n_base: int = 4096) -> SampledFn:
    """Conjugate of a step symbol or jump symbol on a grid graded at its jumps."""
    if isinstance(symbol, JumpSymbolSpec):
        grid = GradedGrid((symbol.t0,), depth=depth, n_base=n_base)
        return jump_conjugate_on_grid(symbol, grid)
    grid = GradedGrid(tuple(symbol.jumps()[0]), depth=depth, n_base=n_base)
    return conjugate_step_on_grid(symbol, grid)


def numerical_evidence(symbol: Union[StepSymbol, JumpSymbolSpec], lambdas=None,
                       window=(1.0, 6.0), depths=(30, 40), n_base: int = 4096) -> dict:
    """Decay fit of the distribution of the conjugate and layer-cake refinement trend."""
    lam = default_lambdas() if lambdas is None else np.asarray(lambdas, float)
    out = {"depths": list(depths), "n_base": n_base, "window": list(window),
           "alpha_tolerance": ALPHA_TOL, "growth_threshold": GROWTH_RATIO}
    finest = conjugate_on_graded(symbol, max(depths), n_base)
    try:
        fit = fit_decay(distribution_curve(finest, lam), window)
        out["fit"] = fit.to_json()
    except InsufficientSupport as exc:
        out["fit"] = None
        out["fit_error"] = str(exc)
    raws, corrected = [], []
    for d in depths:
        vals = finest if d == max(depths) else conjugate_on_graded(symbol, d, n_base)
        ei = exp_integral(vals)
        raws.append(ei.raw)
        corrected.append(None if ei.divergent else ei.value)
    out["layer_cake_raw"] = raws
    out["layer_cake_corrected"] = corrected
    out["growth_ratio"] = raws[-1] / raws[0]
    out["corrected_divergent"] = corrected[-1] is None
    if corrected[0] is not None and corrected[-1] is not None:
        out["corrected_rel_change"] = abs(corrected[-1] - corrected[0]) / abs(corrected[-1])
    return out


def _symbol_product(f, E: ArcSet):
    if isinstance(f, JumpSymbolSpec):
        if E.measure < TWO_PI - 1e-12:
            raise ValueError("jump symbols are supported with E = the full circle only")
        return f
    if not isinstance(f, StepSymbol):
        f = StepSymbol.constant(float(f))
    return scale_symbol(f, rho(E))


def verdict(f: Union[StepSymbol, JumpSymbolSpec, float], E: ArcSet, **kwargs) -> IntegrabilityVerdict:
    """Decide whether ``exp`` of the conjugate of ``f * rho_E`` is integrable.

    * constant product: trivially integrable;
    * ``f >= pi/2`` and ``0 < |E| < 2 pi``: not integrable, provided the
      numerics agree (decay rate at most ``1 + 0.15`` or layer-cake growth
      of at least 1.5 under refinement);
    * every jump of the product smaller than ``pi``: integrable, since the
      product is then a continuous function plus one with sup norm below
      ``pi/2``;
    * anything else: numerical evidence only, verdict ``inconclusive``.

    Thresholds at ``pi/2`` and ``pi`` are compared with slack ``1e-6`` so
    that decimal inputs such as ``1.5707963`` count as ``pi/2``.
    """
    g = _symbol_product(f, E)
    if isinstance(g, StepSymbol) and g.is_constant:
        return IntegrabilityVerdict("integrable", "constant",
                                    evidence={"reason": "f * rho_E is constant; its conjugate vanishes"})
    if isinstance(g, StepSymbol):
        f_min = float(np.min(f.values)) if isinstance(f, StepSymbol) else float(f)
        jumps = g.jumps()[1]
        base = {"range_gap": essential_range_gap(g), "max_jump": float(np.max(np.abs(jumps))),
                "f_min": f_min, "E_measure": E.measure}
        if f_min >= np.pi / 2 - THRESHOLD_TOL and 0 < E.measure < TWO_PI:
            ev = {**base, **numerical_evidence(g, **kwargs)}
            fit = ev.get("fit") or {}
            alpha = fit.get("alpha")
            ok = (alpha is not None and alpha <= 1 + ALPHA_TOL) or ev["growth_ratio"] >= GROWTH_RATIO
            return IntegrabilityVerdict("non_integrable" if ok else "inconclusive", "f_at_least_half_pi",
                                        alpha, fit.get("C"), ev)
        if base["max_jump"] < np.pi - THRESHOLD_TOL:
            return IntegrabilityVerdict("integrable", "jumps_below_pi", evidence=base)
        ev = {**base, **numerical_evidence(g, **kwargs)}
    else:
        ev = {"max_jump": float(np.pi), **numerical_evidence(g, **kwargs)}
    fit = ev.get("fit") or {}
    return IntegrabilityVerdict("inconclusive", "numerical", fit.get("alpha"), fit.get("C"), ev)
