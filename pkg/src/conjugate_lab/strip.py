"""Harmonic functions on the vertical strip ``{|Re z| < pi/2}``.

The strip maps onto the unit disk by ``w = tan(z/2)``; the inverse is
``z = 2 arctan(w) = i log((1 - i w)/(1 + i w))``.

:func:`g_lambda` is the bounded harmonic function on the strip whose
boundary values are 1 on the parts of the two walls above height
``lambda + 2`` and 0 below.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HALF_PI = 0.5 * np.pi
_SINH_CAP = 700.0


@dataclass(frozen=True)
class StripPoint:
    tau: complex

    def __post_init__(self):
        tau = complex(self.tau)
        if not abs(tau.real) < HALF_PI:
            raise ValueError(f"|Re tau| must be < pi/2, got {tau.real}")
        object.__setattr__(self, "tau", tau)

    def __complex__(self):
        return self.tau


@dataclass(frozen=True)
class LambdaParam:
    value: float

    def __post_init__(self):
        v = float(self.value)
        if not v >= 0:
            raise ValueError(f"lambda must be >= 0, got {v}")
        object.__setattr__(self, "value", v)

    def __float__(self):
        return self.value


def _tau(z) -> np.ndarray:
    if isinstance(z, StripPoint):
        z = z.tau
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z.real) >= HALF_PI):
        raise ValueError("points must lie in the open strip |Re z| < pi/2")
    return z


def _lam(lam):
    if isinstance(lam, LambdaParam):
        return lam.value
    lam = np.asarray(lam, dtype=float)
    if np.any(~(lam >= 0)):
        raise ValueError("lambda must be >= 0")
    return lam if lam.ndim else float(lam)


def strip_to_disk(z):
    """``w = tan(z/2)``; maps the strip onto the open unit disk."""
    return np.tan(0.5 * _tau(z))


def disk_to_strip(w):
    """``z = i log((1 - i w)/(1 + i w))`` with the principal logarithm."""
    if hasattr(w, "z"):
        w = w.z
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(w) >= 1):
        raise ValueError("points must lie in the open unit disk")
    return 1j * np.log((1 - 1j * w) / (1 + 1j * w))


def g_lambda(tau, lam):
    """Harmonic measure of the upper wall pieces ``{|x| = pi/2, y > lambda + 2}``.

    With ``s = lambda + 2 - y``:
    ``(1/pi) arctan(cos x / sinh s)`` for ``s > 0``,
    ``1 - (1/pi) arctan(cos x / sinh(-s))`` for ``s < 0`` and ``1/2`` at
    ``s = 0``. Values for ``|s| > 700`` are clamped to 0 or 1 to stay inside
    the double range of ``sinh``.
    """
    z = _tau(tau)
    s = _lam(lam) + 2.0 - z.imag
    c = np.cos(z.real)
    a = np.abs(s)
    safe = np.where((a > 0) & (a <= _SINH_CAP), a, 1.0)
    base = np.arctan(c / np.sinh(safe)) / np.pi
    base = np.where(a > _SINH_CAP, 0.0, base)
    out = np.where(s > 0, base, 1.0 - base)
    out = np.where(s == 0, 0.5, out)
    return out if out.ndim else float(out)


def g_lambda_shift_check(tau, lam):
    """``|g_lambda(tau, lam) - g_lambda(tau - i lam, 0)|``; vanishes identically."""
    z = _tau(tau)
    lv = _lam(lam)
    return np.abs(g_lambda(z, lv) - g_lambda(z - 1j * lv, 0.0))


def heatmap(lam, xs, ys):
    """Rows ``(x, y, g_lambda)`` over the product of ``xs`` and ``ys``."""
    X, Y = np.meshgrid(np.asarray(xs, float), np.asarray(ys, float), indexing="ij")
    G = g_lambda(X + 1j * Y, lam)
    return np.column_stack([X.ravel(), Y.ravel(), np.ravel(G)])
