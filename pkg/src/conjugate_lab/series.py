"""The slowly convergent series ``sum_{n>=2} cos(nx)/(n log n)`` and its sine
partner, the constant ``B`` in ``g(x) ~ log log(1/x) + B``, and a bounded
real symbol with a single jump of size ``pi`` whose conjugate still has an
integrable exponential.

Two evaluation paths are provided:

* :func:`loglog_cos_series` / :func:`loglog_sin_series` -- plain partial sums
  with a guaranteed remainder bound (summation by parts against the
  Dirichlet kernel).
* :func:`loglog_cos_values` / :func:`loglog_sin_values` -- vectorized, fast
  and accurate to about ``1e-9``, for use on grids. Near ``x = 0`` they sum
  ``2**16`` terms directly and replace the rest by its Euler-Maclaurin
  expansion, whose integral part goes to :func:`scipy.integrate.quad`'s
  Fourier-integral rule; away from 0 they interpolate a folded-FFT table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicSpline

from .circle import TWO_PI, CircleGrid, GradedGrid, SampledFn, signed_angle, wrap_angle
from .conjugator import conjugate_grid
from .errors import AtJump, DomainError, TooExpensive

MAX_TERMS = 10 ** 9
BLOCK = 1 << 22


@dataclass(frozen=True)
class SeriesValue:
    """Partial sum with a guaranteed bound on the omitted remainder."""

    value: float
    n_terms: int
    tail_bound: float

    def __post_init__(self):
        if not self.tail_bound >= 0:
            raise ValueError("tail_bound must be nonnegative")

    def __float__(self):
        return self.value


def _block_sums(x: float, n_max: int, trig) -> float:
    """``sum_{n=2}^{n_max} trig(n x)/(n log n)``.

    Fixed-size blocks are summed pairwise by numpy and the block totals are
    combined with :func:`math.fsum`, so the result does not depend on how
    the work is split.
    """
    parts = []
    for start in range(2, n_max + 1, BLOCK):
        n = np.arange(start, min(start + BLOCK, n_max + 1), dtype=float)
        parts.append(float(np.sum(trig(n * x) / (n * np.log(n)))))
    return math.fsum(parts)


def terms_for(x_eff: float, tol: float, scale: float = 1.0) -> int:
    """Smallest practical ``N`` with ``scale * 4 pi / (x N log N) <= tol``."""
    c = scale * 4 * np.pi / x_eff
    N = math.ceil(c / (tol * math.log(max(2.0, c / tol))))
    for _ in range(2):
        N = max(2, math.ceil(c / (tol * math.log(max(2, N)))))
    while c / (N * math.log(N)) > tol:
        N = math.ceil(N * 1.01) + 1
        if N > MAX_TERMS:
            break
    if N > MAX_TERMS:
        raise TooExpensive(f"{N} terms needed for x={x_eff:g}, tol={tol:g}; cap is {MAX_TERMS}")
    return N


def _reduced(x: float) -> float:
    x = float(x)
    return min(x, TWO_PI - x)


def loglog_cos_series(x: float, tol: float = 1e-6) -> SeriesValue:
    """``g(x) = sum_{n>=2} cos(nx)/(n log n)`` for ``0 < x < 2 pi``.

    The remainder after ``N`` terms is at most ``4 pi/(x N log N)`` (with
    ``x`` replaced by ``2 pi - x`` past ``pi``); ``N`` is the smallest count
    meeting ``tol``.
    """
    if not 0 < x < TWO_PI:
        raise DomainError(f"x must lie in (0, 2 pi), got {x}")
    if not tol > 0:
        raise ValueError("tol must be positive")
    xe = _reduced(x)
    N = terms_for(xe, tol)
    return SeriesValue(_block_sums(x, N, np.cos), N, 4 * np.pi / (xe * N * math.log(N)))


def loglog_sin_series(t: float, t0: float = 0.0, tol: float = 1e-6) -> SeriesValue:
    """``h(t) = 2 sum_{n>=2} sin(n (t - t0))/(n log n)`` with a remainder bound."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    y = float(wrap_angle(t - t0))
    if y == 0.0:
        return SeriesValue(0.0, 0, 0.0)
    ye = _reduced(y)
    N = terms_for(ye, tol, scale=2.0)
    return SeriesValue(2 * _block_sums(y, N, np.sin), N, 8 * np.pi / (ye * N * math.log(N)))


# ---------------------------------------------------------------------------
# the constant B


@lru_cache(maxsize=None)
def constant_B(depth: int = 10 ** 8) -> float:
    """``B = lim (sum_{k=2}^n 1/(k log k) - log log n)``.

    Direct sum to ``depth`` and a midpoint-rule estimate of the rest:
    ``sum_{k>n} phi(k) ~ int_{n+1/2}^inf phi + phi'(n + 1/2)/24`` for
    ``phi(y) = 1/(y log y)``.
    """
    parts = []
    for start in range(2, depth + 1, BLOCK):
        k = np.arange(start, min(start + BLOCK, depth + 1), dtype=float)
        parts.append(float(np.sum(1.0 / (k * np.log(k)))))
    m = depth + 0.5
    lm = math.log(m)
    dphi = -(lm + 1) / (m * m * lm * lm)
    return math.fsum(parts) - math.log(lm) + dphi / 24


def asymptote(x) -> float:
    """``log log(1/x) + B`` for ``0 < x < 1/e``."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0) or np.any(x >= math.exp(-1)):
        raise DomainError("asymptote needs 0 < x < 1/e")
    out = np.log(np.log(1.0 / x)) + constant_B()
    return out if out.ndim else float(out)


def decay_rate(x) -> float:
    """``(log log 1/x)^{1/3} (log 1/x)^{-2/3}``: the size of the error term."""
    L = np.log(1.0 / np.asarray(x, dtype=float))
    return np.log(L) ** (1 / 3) * L ** (-2 / 3)


# ---------------------------------------------------------------------------
# fast vectorized evaluation

_N0 = 1 << 16
_SMALL = 0.1
_TABLE_SIZE = 1 << 16
_TABLE_TERMS = 1 << 26


def _phi_derivs(y: float):
    lg = math.log(y)
    return (1 / (y * lg),
            -(lg + 1) / (y ** 2 * lg ** 2),
            (2 * lg ** 2 + 3 * lg + 2) / (y ** 3 * lg ** 3),
            -(6 * lg ** 3 + 11 * lg ** 2 + 12 * lg + 6) / (y ** 4 * lg ** 4))


def _tail_integral(x: float, N: float) -> complex:
    """``int_N^inf exp(i x y)/(y log y) dy`` after ``s = x y``."""
    L = -math.log(x)
    a = x * N
    total = 0j
    if a < 1:
        # smooth in u = log s on [log a, 0]
        for part, fn in ((1, math.cos), (1j, math.sin)):
            val, _ = integrate.quad(lambda u: fn(math.exp(u)) / (u + L), math.log(a), 0.0,
                                    limit=200, epsabs=1e-13, epsrel=1e-12)
            total += part * val
        a = 1.0
    g = lambda s: 1.0 / (s * (math.log(s) + L))  # noqa: E731
    re, _ = integrate.quad(g, a, np.inf, weight="cos", wvar=1.0, epsabs=1e-13)
    im, _ = integrate.quad(g, a, np.inf, weight="sin", wvar=1.0, epsabs=1e-13)
    return total + re + 1j * im


def _small_x(x: np.ndarray) -> np.ndarray:
    """Complex ``sum_{n>=2} exp(i n x)/(n log n)`` for ``0 < x <= 0.1``."""
    n = np.arange(2, _N0, dtype=float)
    w = 1.0 / (n * np.log(n))
    out = np.empty(len(x), complex)
    for s in range(0, len(x), 64):
        xs = x[s:s + 64]
        out[s:s + 64] = np.exp(1j * np.multiply.outer(xs, n)) @ w
    p0, p1, p2, p3 = _phi_derivs(float(_N0))
    for i, xi in enumerate(x):
        e = np.exp(1j * xi * _N0)
        ix = 1j * xi
        d1 = e * (ix * p0 + p1)
        d3 = e * (ix ** 3 * p0 + 3 * ix ** 2 * p1 + 3 * ix * p2 + p3)
        out[i] += _tail_integral(xi, _N0) + 0.5 * e * p0 - d1 / 12 + d3 / 720
    return out


def folded_series(m: int, n_terms: int) -> np.ndarray:
    """Complex ``sum_{n=2}^{n_terms} exp(i n x_j)/(n log n)`` at ``x_j = 2 pi j/m``.

    Coefficients are folded modulo ``m`` and a single FFT does the rest.
    """
    acc = np.zeros(m)
    for start in range(2, n_terms + 1, BLOCK):
        n = np.arange(start, min(start + BLOCK, n_terms + 1))
        nf = n.astype(float)
        acc += np.bincount(n % m, weights=1.0 / (nf * np.log(nf)), minlength=m)
    return m * np.fft.ifft(acc)


@lru_cache(maxsize=2)
def _table(kind: str):
    x = TWO_PI * np.arange(_TABLE_SIZE) / _TABLE_SIZE
    vals = folded_series(_TABLE_SIZE, _TABLE_TERMS)
    vals = vals.real if kind == "cos" else vals.imag
    keep = (x > 0.5 * _SMALL) & (x < TWO_PI - 0.5 * _SMALL)
    return CubicSpline(x[keep], vals[keep])


def _values(x, kind: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    y = wrap_angle(x).ravel()
    if kind == "cos" and np.any(y == 0):
        raise DomainError("the cosine series diverges at x = 0")
    out = np.zeros(len(y))
    ye = np.minimum(y, TWO_PI - y)
    small = (ye <= _SMALL) & (ye > 0)
    if np.any(small):
        v = _small_x(ye[small])
        if kind == "cos":
            out[small] = v.real
        else:
            out[small] = np.where(y[small] <= np.pi, v.imag, -v.imag)
    big = ye > _SMALL
    if np.any(big):
        out[big] = _table(kind)(y[big])
    return out.reshape(x.shape) if x.ndim else float(out[0])


def loglog_cos_values(x) -> np.ndarray:
    """Fast ``sum_{n>=2} cos(nx)/(n log n)`` for arrays, ``x`` not a multiple of ``2 pi``."""
    return _values(x, "cos")


def loglog_sin_values(x) -> np.ndarray:
    """Fast ``sum_{n>=2} sin(nx)/(n log n)`` for arrays (0 at multiples of ``2 pi``)."""
    return _values(x, "sin")


# ---------------------------------------------------------------------------
# a symbol with one jump of size pi


@dataclass(frozen=True)
class JumpSymbolSpec:
    """Shape of the jump symbol ``f = g + h``.

    ``g`` is ``pi/2`` on ``(t0 - delta, t0)`` and ``-pi/2`` on
    ``(t0, t0 + delta)``, falls linearly to 0 over ``taper_width`` beyond
    either end and vanishes elsewhere; ``h(t) = 2 sum sin(n(t-t0))/(n log n)``.
    """

    t0: float = np.pi
    delta: float = 0.5
    taper_width: Optional[float] = None

    def __post_init__(self):
        w = 0.5 * self.delta if self.taper_width is None else float(self.taper_width)
        object.__setattr__(self, "taper_width", w)
        if not 0 < self.t0 < TWO_PI:
            raise ValueError("t0 must lie in (0, 2 pi)")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if not w > 0:
            raise ValueError("taper_width must be positive")
        if self.t0 - self.delta - w <= 0 or self.t0 + self.delta + w >= TWO_PI:
            raise ValueError("support of the profile must stay inside (0, 2 pi)")

    def kinks(self):
        """``(angles, slope changes)`` of the piecewise-linear remainder."""
        t0, d, w = self.t0, self.delta, self.taper_width
        s = np.pi / (2 * w)
        return np.array([t0 - d - w, t0 - d, t0 + d, t0 + d + w]), np.array([s, -s, s, -s])

    def to_json(self) -> dict:
        return {"t0": self.t0, "delta": self.delta, "taper_width": self.taper_width}


def _offset(spec: JumpSymbolSpec, t) -> np.ndarray:
    """``t - t0`` reduced to ``[-pi, pi)``; raises at the jump."""
    y = signed_angle(np.asarray(t, dtype=float) - spec.t0)
    if np.any(y == 0):
        raise AtJump("evaluation at the jump point")
    return y


def _profile_at(spec: JumpSymbolSpec, y: np.ndarray) -> np.ndarray:
    d, w = spec.delta, spec.taper_width
    a = np.abs(y)
    mag = np.where(a <= d, np.pi / 2, np.where(a < d + w, np.pi / 2 * (d + w - a) / w, 0.0))
    return np.where(y < 0, mag, -mag)


def jump_profile(spec: JumpSymbolSpec, t) -> np.ndarray:
    """The compactly supported piece ``g`` (jump of ``-pi`` at ``t0``)."""
    return _profile_at(spec, _offset(spec, t))


def _sawtooth_at(y):
    # -(pi - s)/2 with s = y mod 2 pi: jump of -pi at s = 0
    return -(np.pi - np.mod(y, TWO_PI)) / 2


def _lipschitz_part(spec: JumpSymbolSpec, t) -> np.ndarray:
    """``g - sawtooth``: continuous and piecewise linear, 0 at ``t0``."""
    y = signed_angle(np.asarray(t, dtype=float) - spec.t0)
    safe = np.where(y == 0, 1.0, y)
    return np.where(y == 0, 0.0, _profile_at(spec, safe) - _sawtooth_at(safe))


LIPSCHITZ_GRID = 1 << 16


@lru_cache(maxsize=8)
def _lipschitz_conjugate(spec: JumpSymbolSpec) -> CubicSpline:
    grid = CircleGrid(LIPSCHITZ_GRID, 0.0)
    conj = conjugate_grid(SampledFn(grid, _lipschitz_part(spec, grid.nodes))).values
    x = np.append(grid.nodes, TWO_PI)
    return CubicSpline(x, np.append(conj, conj[0]), bc_type="periodic")


def lipschitz_conjugate(spec: JumpSymbolSpec, t) -> np.ndarray:
    """Conjugate of the continuous remainder, from a ``2**16``-point FFT and a spline."""
    return _lipschitz_conjugate(spec)(wrap_angle(np.asarray(t, dtype=float)))


def jump_symbol(spec: JumpSymbolSpec, t, tol: Optional[float] = None):
    """``f(t) = g(t) + h(t)``.

    With ``tol`` the sine series is summed with that remainder bound (scalar
    ``t`` only); otherwise the fast vectorized evaluator is used.
    """
    y = _offset(spec, t)
    if tol is not None:
        return float(_profile_at(spec, y)) + loglog_sin_series(float(t), spec.t0, tol).value
    return _profile_at(spec, y) + 2 * loglog_sin_values(y)


def _conj_from_offset(spec: JumpSymbolSpec, y: np.ndarray, t: np.ndarray, cos_vals) -> np.ndarray:
    saw = -np.log(np.abs(2 * np.sin(y / 2)))
    return saw + lipschitz_conjugate(spec, t) - 2 * cos_vals


def jump_conjugate(spec: JumpSymbolSpec, t, tol: Optional[float] = None):
    """Conjugate ``f~ = g~ + h~``, ``h~(t) = -2 sum cos(n(t-t0))/(n log n)``.

    ``g`` is split into a sawtooth with the same jump, whose conjugate is
    ``-log|2 sin((t - t0)/2)|``, and a continuous piecewise-linear remainder.
    """
    y = _offset(spec, t)
    if tol is not None:
        c = loglog_cos_series(float(abs(y)), tol).value
        return float(_conj_from_offset(spec, y, np.asarray(t, float), c))
    return _conj_from_offset(spec, y, np.asarray(t, float), loglog_cos_values(np.abs(y)))


def jump_conjugate_on_grid(spec: JumpSymbolSpec, grid: GradedGrid) -> SampledFn:
    """:func:`jump_conjugate` on a graded grid, using exact offsets from ``t0``."""
    y = signed_angle(grid.nodes - spec.t0)
    anchors = np.asarray(grid.anchors)
    if len(anchors):
        hit = np.nonzero(np.abs(signed_angle(anchors - spec.t0)) < 1e-12)[0]
        for a in hit:
            mine = grid.near == a
            y = np.where(mine, grid.delta, y)
    if np.any(y == 0):
        raise AtJump("graded grid node sits on the jump")
    return SampledFn(grid, _conj_from_offset(spec, y, grid.nodes, loglog_cos_values(np.abs(y))))


def envelope(x) -> np.ndarray:
    """``|x|^{-1} (log|x|)^{-2}``: an integrable majorant near ``x = 0``."""
    a = np.abs(np.asarray(x, dtype=float))
    return 1.0 / (a * np.log(a) ** 2)
