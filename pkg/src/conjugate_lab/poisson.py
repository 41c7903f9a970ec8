"""Poisson and Herglotz integrals, radial boundary probes, outer functions
and Hardy-space integral means.

Three kinds of boundary data are accepted and handled differently:

* :class:`TrigPoly` -- exact power series, any ``|z| < 1``;
* :class:`StepSymbol` -- the kernel is integrated over each arc in closed
  form, any ``|z| < 1``;
* :class:`SampledFn` on a uniform grid -- trapezoid rule, guarded by
  ``|z| <= 0.9999`` and ``n >= 64/(1 - |z|)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .circle import TWO_PI, CircleGrid, SampledFn, StepSymbol, TrigPoly, signed_angle, BREAK_TOL
from .errors import AtBreakpoint, GridNotUniform, TooCloseToBoundary

RADIUS_GUARD = 0.9999

Boundary = Union[TrigPoly, StepSymbol, SampledFn]


@dataclass(frozen=True)
class DiskPoint:
    z: complex

    def __post_init__(self):
        z = complex(self.z)
        if not abs(z) < 1:
            raise ValueError(f"|z| must be < 1, got {abs(z)}")
        object.__setattr__(self, "z", z)

    def __complex__(self):
        return self.z


def _as_z(z) -> np.ndarray:
    if isinstance(z, DiskPoint):
        z = z.z
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise ValueError("points must lie in the open unit disk")
    return z


def poisson_kernel(z, theta):
    """``Re[(e^{i theta} + z) / (e^{i theta} - z)] = (1 - |z|^2) / |e^{i theta} - z|^2``."""
    z = _as_z(z)
    w = np.exp(1j * np.asarray(theta, dtype=float))
    return (1 - np.abs(z) ** 2) / np.abs(w - z) ** 2


def _arc_herglotz(f: StepSymbol, z: np.ndarray) -> np.ndarray:
    """Closed-form Herglotz integral of a step symbol.

    Over an arc ``[a, b]`` carrying the constant ``c``,
    ``(1/2pi) int (e^{it}+z)/(e^{it}-z) dt`` equals
    ``(c/2pi) * [2*psi - (b - a)] + i (c/pi) log(|e^{ia}-z| / |e^{ib}-z|)``,
    where ``psi`` in ``(0, 2pi)`` is the angle the arc subtends at ``z``.
    """
    out = np.zeros(z.shape, complex)
    bp = f.breakpoints
    for a, b, c in zip(bp[:-1], bp[1:], f.values):
        if b - a >= TWO_PI:
            out += c
            continue
        ea = np.exp(1j * a) - z
        eb = np.exp(1j * b) - z
        psi = np.mod(np.angle(eb / ea), TWO_PI)
        out += c / TWO_PI * (2 * psi - (b - a))
        out += 1j * c / np.pi * (np.log(np.abs(ea)) - np.log(np.abs(eb)))
    return out


def _guard(f: SampledFn, z: np.ndarray):
    if not isinstance(f.grid, CircleGrid):
        raise GridNotUniform("quadrature-backed disk evaluation needs a uniform grid")
    r = np.max(np.abs(z)) if z.size else 0.0
    if r > RADIUS_GUARD:
        raise TooCloseToBoundary(f"|z| = {r} exceeds the quadrature guard {RADIUS_GUARD}")
    if f.grid.n < 64 / (1 - r):
        raise TooCloseToBoundary(
            f"grid of {f.grid.n} nodes too coarse for |z| = {r}; need n >= {64 / (1 - r):.0f}")


def herglotz(f: Boundary, z):
    """``X_f(z) = (1/2pi) int (e^{it}+z)/(e^{it}-z) f(t) dt = u + i u~``, ``Im X_f(0) = 0``."""
    z = _as_z(z)
    if isinstance(f, TrigPoly):
        # X_f(z) = a_0 + 2 sum_{n>0} a_n z^n
        pos = f.coeffs[f.degree + 1:]
        poly = np.concatenate([[f.coeff(0)], 2 * pos])
        return np.polynomial.polynomial.polyval(z, poly)
    if isinstance(f, StepSymbol):
        return _arc_herglotz(f, z)
    if isinstance(f, SampledFn):
        _guard(f, z)
        w = np.exp(1j * f.nodes)
        zz = np.atleast_1d(z)
        out = np.empty(zz.shape, complex)
        for i, zi in enumerate(zz.ravel()):
            out.flat[i] = np.mean((w + zi) / (w - zi) * f.values)
        return out.reshape(z.shape)
    raise TypeError(f"unsupported boundary data {type(f).__name__}")


def poisson_extend(f: Boundary, z):
    """Poisson integral ``u = P[f](z)`` (the real part of :func:`herglotz` for real ``f``)."""
    z = _as_z(z)
    if isinstance(f, TrigPoly):
        r, t = np.abs(z), np.angle(z)
        val = np.exp(1j * np.multiply.outer(t, f.modes)) * r[..., None] ** np.abs(f.modes)
        out = val @ f.coeffs
        return out.real if f.is_real else out
    if isinstance(f, SampledFn):
        _guard(f, z)
        zz = np.atleast_1d(z)
        out = np.array([np.mean(poisson_kernel(zi, f.nodes) * f.values) for zi in zz.ravel()])
        return out.reshape(z.shape)
    return herglotz(f, z).real


@dataclass(frozen=True)
class RadialProbe:
    theta: float
    radii: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.radii, float)
        if np.any(np.diff(r) <= 0) or r[0] <= 0 or r[-1] >= 1:
            raise ValueError("radii must increase strictly inside (0, 1)")

    def rows(self):
        return [(float(r), float(v.real), float(v.imag)) for r, v in zip(self.radii, self.values)]


def radial_probe(f: Boundary, theta: float, radii: Sequence[float]) -> RadialProbe:
    """``X_f(r e^{i theta})`` along a radius; tends to ``f(theta) + i f~(theta)``
    at continuity points of ``f`` and ``f~``."""
    if isinstance(f, StepSymbol):
        angles, _ = f.jumps()
        if len(angles) and np.min(np.abs(signed_angle(theta - angles))) < BREAK_TOL:
            raise AtBreakpoint("radial probe aimed at a jump")
    radii = np.asarray(radii, float)
    vals = herglotz(f, radii * np.exp(1j * theta))
    return RadialProbe(float(theta), radii, np.asarray(vals, complex))


def outer_eval(f: Boundary, z):
    """``Phi_f(z) = exp(i X_f(z) / 2)``; zero free with ``|Phi_f| = exp(-u~/2)``."""
    return np.exp(0.5j * herglotz(f, z))


@dataclass(frozen=True)
class HardyGrowthCurve:
    p: float
    radii: np.ndarray
    means: np.ndarray

    def rows(self):
        return [(float(r), float(m)) for r, m in zip(self.radii, self.means)]

    def is_monotone(self, rtol: float = 1e-9) -> bool:
        m = np.asarray(self.means)
        return bool(np.all(np.diff(m) >= -rtol * np.abs(m[1:])))


_GL_X, _GL_W = np.polynomial.legendre.leggauss(20)


def _graded_panels(u: float, v: float, scale: float) -> np.ndarray:
    """Panel edges on ``[u, v]`` refined geometrically towards both ends."""
    L = v - u
    if L <= 4 * scale:
        return np.linspace(u, v, 5)
    k = np.arange(int(np.ceil(np.log2(L / 2 / scale))) + 1)
    d = np.minimum(scale * 2.0 ** k, L / 2)
    d = np.unique(np.concatenate([[0.0], d]))
    left = u + d
    right = v - d[::-1]
    return np.unique(np.concatenate([left, right]))


def circle_mean(func, r: float, breaks: Sequence[float] = ()) -> float:
    """``(1/2pi) int_0^{2pi} func(t) dt`` for integrands that vary on the
    scale ``1 - r`` near ``breaks``: composite Gauss-Legendre on panels
    graded towards each break."""
    breaks = np.unique(np.concatenate([[0.0, TWO_PI], np.mod(np.asarray(breaks, float), TWO_PI)]))
    scale = max((1 - r) / 4, 1e-14)
    total = 0.0
    for u, v in zip(breaks[:-1], breaks[1:]):
        edges = _graded_panels(u, v, scale)
        a, b = edges[:-1, None], edges[1:, None]
        t = 0.5 * (b - a) * _GL_X + 0.5 * (a + b)
        total += np.sum(0.5 * (b - a) * _GL_W * func(t))
    return total / TWO_PI


def hardy_growth(f: Boundary, p: float, radii: Sequence[float]) -> HardyGrowthCurve:
    """Integral means ``(1/2pi) int |Phi_f(r e^{it})|^p dt`` on each radius.

    ``|Phi_f|^p = exp(-p * Im X_f / 2)``. Sampled data is first replaced by
    its trigonometric interpolant so every circle is evaluated exactly.
    """
    if not p > 0:
        raise ValueError("p must be positive")
    radii = np.asarray(radii, float)
    if np.any(np.diff(radii) <= 0) or radii[0] < 0 or radii[-1] >= 1:
        raise ValueError("radii must increase inside [0, 1)")
    if isinstance(f, SampledFn):
        f = interpolant(f)
    breaks = f.jumps()[0] if isinstance(f, StepSymbol) else ()
    means = []
    for r in radii:
        def integrand(t, r=r):
            return np.exp(-0.5 * p * herglotz(f, r * np.exp(1j * t)).imag)
        means.append(circle_mean(integrand, r, breaks))
    return HardyGrowthCurve(float(p), radii, np.array(means))


def interpolant(f: SampledFn) -> TrigPoly:
    """Trigonometric interpolant of uniform samples (Nyquist mode split evenly)."""
    if not isinstance(f.grid, CircleGrid):
        raise GridNotUniform("interpolation needs a uniform grid")
    n, h = f.grid.n, f.grid.spacing
    shift = f.grid.offset * h
    raw = np.fft.fft(f.values) / n
    k = np.fft.fftfreq(n, 1.0 / n).astype(int)
    N = n // 2
    c = np.zeros(2 * N + 1, complex)
    c[k + N] = raw * np.exp(-1j * k * shift)
    if n % 2 == 0:
        # samples raw*(-1)^j are matched by raw*cos(N (t - shift))
        nyq = raw[N]
        c[0] = nyq / 2 * np.exp(1j * N * shift)
        c[2 * N] = nyq / 2 * np.exp(-1j * N * shift)
    return TrigPoly(c)
