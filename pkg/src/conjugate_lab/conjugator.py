"""Conjugate functions (circle Hilbert transform) by independent routes.

* :func:`conjugate_multiplier` -- exact, on Fourier coefficients.
* :func:`conjugate_grid` -- FFT multiplier on the trigonometric interpolant.
* :func:`conjugate_pv` -- principal-value quadrature of the cotangent kernel.
* :func:`conjugate_step_exact` -- closed form for piecewise-constant symbols.

The normalization is the one for which ``cos -> sin`` and
``sin -> -cos``, i.e. the multiplier ``-i sgn(n)``; conjugates have mean zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .circle import (
    BREAK_TOL,
    TWO_PI,
    CircleGrid,
    GradedGrid,
    SampledFn,
    StepSymbol,
    TrigPoly,
    cell_average,
    signed_angle,
)
from .errors import AtBreakpoint, GridNotUniform, SingularNode


def conjugate_multiplier(f: TrigPoly) -> TrigPoly:
    """Apply ``-i sgn(n)`` to every coefficient."""
    return TrigPoly(-1j * np.sign(f.modes) * f.coeffs)


def conjugate_grid(f: SampledFn, at_offset: Optional[float] = None) -> SampledFn:
    """Conjugate of the trigonometric interpolant of uniform samples.

    The Nyquist mode is dropped: its conjugate, a sine at the Nyquist
    frequency, vanishes on the grid. With ``at_offset`` the result is
    evaluated on the same grid shifted to that offset (for instance the
    half-offset points used by :func:`conjugate_pv`).
    """
    grid = f.grid
    if not isinstance(grid, CircleGrid):
        raise GridNotUniform("conjugate_grid needs samples on a uniform CircleGrid")
    if not grid.is_pow2:
        raise GridNotUniform(f"grid size must be a power of two, got {grid.n}")
    n = grid.n
    shift = 0.0 if at_offset is None else (at_offset - grid.offset) * grid.spacing
    out_grid = grid if at_offset is None else grid.shifted(at_offset)
    v = f.values
    if np.iscomplexobj(v):
        F = np.fft.fft(v)
        k = np.fft.fftfreq(n, 1.0 / n)
        F *= -1j * np.sign(k) * np.exp(1j * k * shift)
        F[n // 2] = 0.0
        return SampledFn(out_grid, np.fft.ifft(F))
    F = np.fft.rfft(v)
    k = np.arange(len(F))
    F *= -1j * np.sign(k) * np.exp(1j * k * shift)
    F[-1] = 0.0
    return SampledFn(out_grid, np.fft.irfft(F, n))


def _shifted_copy(grid: CircleGrid, th: np.ndarray) -> bool:
    """Whether ``th`` is ``grid`` translated by a constant angle."""
    if len(th) != grid.n or grid.n < 2:
        return False
    d = th - grid.nodes
    return bool(np.max(np.abs(signed_angle(d - d[0]))) < 1e-12)


def conjugate_pv(f: SampledFn, theta, chunk: int = 256):
    """Principal-value quadrature ``(1/n) sum_j cot((theta - phi_j)/2) f(phi_j)``.

    Meant for evaluation points halfway between sample nodes: the nodes then
    sit symmetrically about ``theta`` and the odd singular part of the kernel
    cancels pair by pair, with no cutoff parameter. For trigonometric
    polynomials of degree below ``n/2`` the rule is exact at those points.

    ``theta`` may be a scalar or an array. When it is a translate of the
    sample grid the quadrature matrix is circulant and the sum is taken as a
    cyclic convolution by FFT; otherwise it is evaluated directly in chunks
    of ``chunk`` evaluation points.
    """
    grid = f.grid
    if not isinstance(grid, CircleGrid):
        raise GridNotUniform("conjugate_pv needs samples on a uniform CircleGrid")
    phi = grid.nodes
    th = np.atleast_1d(np.asarray(theta, dtype=float))
    if _shifted_copy(grid, th):
        d = signed_angle(th[0] - phi[0] + grid.spacing * np.arange(grid.n))
        if np.any(np.abs(d) < BREAK_TOL):
            raise SingularNode("evaluation point coincides with a sample node")
        kernel = 1.0 / np.tan(d / 2) / grid.n
        out = np.fft.ifft(np.fft.fft(kernel) * np.fft.fft(f.values))
        return out if np.iscomplexobj(f.values) else out.real
    out = np.empty(th.shape, dtype=f.values.dtype)
    for s in range(0, len(th), chunk):
        d = signed_angle(th[s:s + chunk, None] - phi[None, :])
        if np.any(np.abs(d) < BREAK_TOL):
            raise SingularNode("evaluation point coincides with a sample node")
        out[s:s + chunk] = (1.0 / np.tan(d / 2)) @ f.values / grid.n
    return out if np.ndim(theta) else out[0]


def _log_abs_sin_half(d):
    return np.log(np.abs(np.sin(np.asarray(d) / 2)))


def conjugate_step_exact(f: StepSymbol, t):
    """Closed-form conjugate of a step symbol.

    Linearity over jumps gives
    ``(1/pi) * sum_j J_j * log|sin((t - beta_j)/2)|`` where ``J_j`` is the
    jump (value after minus value before) at ``beta_j``. Raises
    :class:`AtBreakpoint` within ``1e-12`` rad of a jump.
    """
    angles, sizes = f.jumps()
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.zeros(t_arr.shape)
    for beta, J in zip(angles, sizes):
        d = signed_angle(t_arr - beta)
        if np.any(np.abs(d) < BREAK_TOL):
            raise AtBreakpoint(f"conjugate is infinite at the jump {beta}")
        out += J * _log_abs_sin_half(d)
    out /= np.pi
    return out if np.ndim(t) else float(out[0])


def conjugate_step_on_grid(f: StepSymbol, grid: GradedGrid) -> SampledFn:
    """:func:`conjugate_step_exact` on a graded grid, using exact anchor offsets.

    The term of a jump that coincides with a node's anchor is evaluated from
    the stored offset rather than from the rounded node angle.
    """
    angles, sizes = f.jumps()
    anchors = np.asarray(grid.anchors)
    out = np.zeros(grid.n)
    for beta, J in zip(angles, sizes):
        d = signed_angle(grid.nodes - beta)
        if len(anchors):
            hit = np.abs(signed_angle(anchors - beta)) < BREAK_TOL
            if np.any(hit):
                mine = (grid.near >= 0) & hit[np.maximum(grid.near, 0)]
                d = np.where(mine, grid.delta, d)
        if np.any(d == 0):
            raise AtBreakpoint("graded grid node sits on a jump")
        out += J * _log_abs_sin_half(d)
    return SampledFn(grid, out / np.pi)


@dataclass(frozen=True)
class ConjugationReport:
    """Result of one conjugation route plus its deviation from a second one."""

    method: str
    result: Union[SampledFn, TrigPoly]
    cross_error: Optional[float] = None
    n: Optional[int] = None

    def __post_init__(self):
        if self.method not in ("multiplier", "pv_quadrature", "closed_form"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.cross_error is not None and not self.cross_error >= 0:
            raise ValueError("cross_error must be nonnegative")

    def to_json(self) -> dict:
        return {"method": self.method, "n": self.n, "max_cross_error": self.cross_error}


def cross_check(f: Union[TrigPoly, StepSymbol], n: int = 4096,
                exclusion: Optional[float] = None):
    """Evaluate the conjugate of ``f`` three ways on the half-offset points.

    Samples sit on ``CircleGrid(n, 0.5)`` (cell averages for step symbols,
    so jumps between nodes are placed exactly); results are reported on
    ``CircleGrid(n, 0.0)``. Returns ``(theta, exact, fft, pv, report)`` where
    ``exact`` comes from the multiplier (trigonometric polynomials) or the
    closed form (step symbols). The cross error is the largest
    ``|pv - exact|`` over points at least ``exclusion`` (default: 10 grid
    spacings) away from every jump.
    """
    grid = CircleGrid(n, 0.5)
    theta = grid.shifted(0.0).nodes
    if isinstance(f, TrigPoly):
        samples = SampledFn(grid, f(grid.nodes))
        exact = np.real_if_close(conjugate_multiplier(f)(theta))
        mask = np.ones(n, bool)
    else:
        samples = cell_average(f, grid)
        angles, _ = f.jumps()
        exclusion = 10 * grid.spacing if exclusion is None else exclusion
        mask = np.ones(n, bool)
        for beta in angles:
            mask &= np.abs(signed_angle(theta - beta)) >= exclusion
        exact = np.full(n, np.nan)
        ok = np.ones(n, bool)
        for beta in angles:
            ok &= np.abs(signed_angle(theta - beta)) >= BREAK_TOL
        exact[ok] = conjugate_step_exact(f, theta[ok])
        for i in np.nonzero(~ok)[0]:
            J = f.jumps()[1][np.argmin(np.abs(signed_angle(angles - theta[i])))]
            exact[i] = -np.inf if J > 0 else np.inf
    fft_vals = conjugate_grid(samples, at_offset=0.0).values
    pv_vals = conjugate_pv(samples, theta)
    err = float(np.max(np.abs(pv_vals[mask] - exact[mask]))) if np.any(mask) else None
    report = ConjugationReport("pv_quadrature", SampledFn(grid.shifted(0.0), pv_vals), err, n)
    return theta, exact, fft_vals, pv_vals, report
