"""Functions on the unit circle: grids, trigonometric polynomials, arc sets
and piecewise-constant symbols.

Angles are radians in ``[0, 2*pi)``. Everything here is an immutable value;
arrays stored on instances are flagged read-only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from .errors import NodeAtJump

TWO_PI = 2.0 * np.pi

#: Two angles closer than this are treated as coincident.
BREAK_TOL = 1e-12


def _frozen(a) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


def wrap_angle(t):
    """Map angles to ``[0, 2*pi)``."""
    t = np.mod(t, TWO_PI)
    # np.mod can return 2*pi for tiny negative inputs
    return np.where(t >= TWO_PI, 0.0, t)


def signed_angle(t):
    """Map angle differences to ``[-pi, pi)``."""
    return np.mod(np.asarray(t, dtype=float) + np.pi, TWO_PI) - np.pi


# ---------------------------------------------------------------------------
# grids


@dataclass(frozen=True)
class CircleGrid:
    """Uniform grid ``theta_j = 2*pi*(j + offset)/n``.

    The default ``offset=0.5`` keeps nodes away from angles such as ``0`` and
    ``pi`` where the symbols used throughout the package jump.
    """

    n: int
    offset: float = 0.5

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"grid size must be an integer >= 2, got {self.n}")
        if not 0.0 <= self.offset < 1.0:
            raise ValueError(f"offset must lie in [0, 1), got {self.offset}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def spacing(self) -> float:
        return TWO_PI / self.n

    @property
    def nodes(self) -> np.ndarray:
        return (np.arange(self.n) + self.offset) * self.spacing

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.n, self.spacing)

    @property
    def is_pow2(self) -> bool:
        return self.n & (self.n - 1) == 0

    def __len__(self):
        return self.n

    def shifted(self, offset: float) -> "CircleGrid":
        return CircleGrid(self.n, offset)


@dataclass(frozen=True, eq=False)
class GradedGrid:
    """Uniform background grid plus geometric clusters around singular points.

    Around every anchor ``a`` nodes are placed at ``a +/- h * ratio**k`` for
    ``k = 0..depth`` where ``h = 2*pi/n_base`` is the background spacing.
    Background nodes closer than ``h`` to an anchor are dropped, so the anchor
    itself is always the midpoint between its two innermost nodes.

    Besides the angles, every node remembers its nearest anchor and its signed
    offset from it (``near``, ``delta``). Offsets of the clustered nodes are
    exact, which matters at large depth where ``a + delta`` is no longer
    representable to full relative accuracy.

    Cell weights are midpoint cell widths; they sum to ``2*pi``.
    """

    anchors: tuple
    depth: int = 40
    ratio: float = 0.5
    n_base: int = 4096
    nodes: np.ndarray = field(init=False, repr=False)
    weights: np.ndarray = field(init=False, repr=False)
    near: np.ndarray = field(init=False, repr=False)
    delta: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if not 0.0 < self.ratio < 1.0:
            raise ValueError(f"ratio must lie in (0, 1), got {self.ratio}")
        if self.depth < 1:
            raise ValueError("depth must be a positive integer")
        anchors = np.unique(wrap_angle(np.asarray(self.anchors, dtype=float).ravel()))
        h = TWO_PI / self.n_base
        if len(anchors) > 1:
            gaps = np.diff(np.append(anchors, anchors[0] + TWO_PI))
            if gaps.min() < 2.5 * h:
                raise ValueError("anchors closer than 2.5 background spacings; raise n_base")
        object.__setattr__(self, "anchors", tuple(float(a) for a in anchors))

        bg = CircleGrid(self.n_base).nodes
        if len(anchors):
            d = signed_angle(bg[:, None] - anchors[None, :])
            bg_near = np.argmin(np.abs(d), axis=1)
            bg_delta = d[np.arange(len(bg)), bg_near]
            keep = np.abs(bg_delta) > h * (1 + 1e-9)
        else:
            bg_near = np.full(len(bg), -1)
            bg_delta = bg.copy()
            keep = np.ones(len(bg), bool)

        dk = h * self.ratio ** np.arange(self.depth + 1)
        near = [bg_near[keep]]
        delta = [bg_delta[keep]]
        for i in range(len(anchors)):
            near.append(np.full(2 * len(dk), i))
            delta.append(np.concatenate([-dk, dk]))
        near = np.concatenate(near)
        delta = np.concatenate(delta)
        base = anchors[np.maximum(near, 0)] if len(anchors) else np.zeros(len(near))
        angle = wrap_angle(base + delta)
        order = np.lexsort((delta, angle))
        near, delta, angle, base = near[order], delta[order], angle[order], base[order]

        # forward cell gaps, exact inside an anchor cluster
        nxt = np.roll(np.arange(len(angle)), -1)
        same = (near == near[nxt]) & (near >= 0) & (np.abs(delta[nxt] - delta) < 1.0)
        gap = np.where(same, delta[nxt] - delta, np.mod(angle[nxt] - angle, TWO_PI))
        if np.any(gap <= 0):
            raise ValueError("graded grid has coincident nodes; reduce depth or ratio")
        weights = 0.5 * (gap + np.roll(gap, 1))

        object.__setattr__(self, "nodes", _frozen(angle))
        object.__setattr__(self, "weights", _frozen(weights))
        object.__setattr__(self, "near", _frozen(near))
        object.__setattr__(self, "delta", _frozen(delta))

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def spacing(self) -> float:
        """Background spacing."""
        return TWO_PI / self.n_base

    @property
    def min_spacing(self) -> float:
        return float(np.min(np.abs(np.diff(np.sort(self.delta[self.near >= 0]))))) if self.anchors else self.spacing

    def __len__(self):
        return self.n

    def anchor_side(self, anchor: int, side: int) -> np.ndarray:
        """Indices of clustered nodes on one side of an anchor, innermost last."""
        dk = self.spacing * self.ratio ** np.arange(self.depth + 1)
        idx = []
        for d in dk:
            hit = np.nonzero((self.near == anchor) & (self.delta == side * d))[0]
            idx.append(hit[0])
        return np.array(idx)


Grid = Union[CircleGrid, GradedGrid]


# ---------------------------------------------------------------------------
# trigonometric polynomials


@dataclass(frozen=True, eq=False)
class TrigPoly:
    """``sum_{n=-N}^{N} a_n exp(i n theta)`` with ``coeffs[n + N] = a_n``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).ravel()
        if len(c) % 2 != 1:
            raise ValueError("coefficient array must have odd length 2N+1")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", _frozen(c))

    @property
    def degree(self) -> int:
        return (len(self.coeffs) - 1) // 2

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.degree, self.degree + 1)

    def coeff(self, n: int) -> complex:
        if abs(n) > self.degree:
            return 0j
        return complex(self.coeffs[n + self.degree])

    @property
    def is_real(self) -> bool:
        c = self.coeffs
        scale = max(1.0, float(np.max(np.abs(c))))
        return bool(np.allclose(c[::-1], np.conj(c), rtol=0, atol=1e-13 * scale))

    @property
    def mean(self) -> complex:
        return self.coeff(0)

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.exp(1j * np.multiply.outer(theta, self.modes)) @ self.coeffs
        return out.real if self.is_real else out

    # constructors
    @classmethod
    def constant(cls, c: float) -> "TrigPoly":
        return cls([c])

    @classmethod
    def from_real(cls, cos: Sequence[float] = (), sin: Sequence[float] = ()) -> "TrigPoly":
        """``cos[0] + sum_k cos[k] cos(k t) + sin[k] sin(k t)``; ``sin[0]`` is ignored."""
        N = max(len(cos), len(sin), 1) - 1
        c = np.zeros(2 * N + 1, complex)
        cos = np.pad(np.asarray(cos, float), (0, N + 1 - len(cos)))
        sin = np.pad(np.asarray(sin, float), (0, N + 1 - len(sin)))
        c[N] = cos[0]
        k = np.arange(1, N + 1)
        c[N + k] = (cos[1:] - 1j * sin[1:]) / 2
        c[N - k] = (cos[1:] + 1j * sin[1:]) / 2
        return cls(c)

    @classmethod
    def cosine(cls, k: int = 1) -> "TrigPoly":
        return cls.from_real(cos=[0.0] * k + [1.0])

    @classmethod
    def sine(cls, k: int = 1) -> "TrigPoly":
        return cls.from_real(sin=[0.0] * k + [1.0])

    @classmethod
    def random_real(cls, degree: int, rng=None, decay: float = 0.0) -> "TrigPoly":
        """Random real polynomial with normal coefficients scaled by ``(1+|n|)**-decay``."""
        rng = np.random.default_rng(rng)
        k = np.arange(degree + 1)
        scale = (1.0 + k) ** -decay
        cos = rng.standard_normal(degree + 1) * scale
        sin = rng.standard_normal(degree + 1) * scale
        return cls.from_real(cos, sin)

    # algebra
    def _padded(self, N: int) -> np.ndarray:
        d = N - self.degree
        return np.pad(self.coeffs, (d, d))

    def __add__(self, other):
        if isinstance(other, TrigPoly):
            N = max(self.degree, other.degree)
            return TrigPoly(self._padded(N) + other._padded(N))
        c = self.coeffs.copy()
        c[self.degree] += other
        return TrigPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return TrigPoly(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return TrigPoly(self.coeffs * scalar)

    __rmul__ = __mul__

    def rotate(self, phi: float) -> "TrigPoly":
        """``t -> f(t - phi)``."""
        return TrigPoly(self.coeffs * np.exp(-1j * self.modes * phi))

    def allclose(self, other: "TrigPoly", atol: float = 1e-12) -> bool:
        N = max(self.degree, other.degree)
        return bool(np.allclose(self._padded(N), other._padded(N), rtol=0, atol=atol))


# ---------------------------------------------------------------------------
# arc sets and step symbols


@dataclass(frozen=True)
class ArcSet:
    """Finite union of disjoint closed arcs ``[a, b]`` with ``0 <= a < b <= 2*pi``.

    Arcs passed in may wrap past ``2*pi`` (``b > 2*pi``) or use negative
    angles; they are split and normalized. Touching arcs are merged,
    overlapping ones rejected.
    """

    arcs: tuple = ()

    def __post_init__(self):
        pieces = []
        for a, b in self.arcs:
            a, b = float(a), float(b)
            if not b > a:
                raise ValueError(f"arc ({a}, {b}) must have b > a")
            if b - a >= TWO_PI - BREAK_TOL:
                pieces = [(0.0, TWO_PI)]
                if len(self.arcs) > 1:
                    raise ValueError("a full-circle arc cannot be combined with other arcs")
                break
            a0 = float(np.mod(a, TWO_PI))
            b0 = a0 + (b - a)
            if a0 >= TWO_PI - BREAK_TOL:
                a0, b0 = 0.0, b - a
            if b0 > TWO_PI + BREAK_TOL:
                pieces += [(a0, TWO_PI), (0.0, b0 - TWO_PI)]
            else:
                pieces.append((a0, min(b0, TWO_PI)))
        pieces.sort()
        merged = []
        for a, b in pieces:
            if merged and a < merged[-1][1] - BREAK_TOL:
                raise ValueError("arcs overlap")
            if merged and a <= merged[-1][1] + BREAK_TOL:
                merged[-1] = (merged[-1][0], max(b, merged[-1][1]))
            else:
                merged.append((a, b))
        object.__setattr__(self, "arcs", tuple(merged))

    @classmethod
    def empty(cls) -> "ArcSet":
        return cls(())

    @classmethod
    def full(cls) -> "ArcSet":
        return cls(((0.0, TWO_PI),))

    @property
    def measure(self) -> float:
        return float(sum(b - a for a, b in self.arcs))

    @property
    def endpoints(self) -> np.ndarray:
        """Angles where the indicator actually jumps."""
        return self.indicator().jumps()[0]

    def rotate(self, phi: float) -> "ArcSet":
        return ArcSet(tuple((a + phi, b + phi) for a, b in self.arcs))

    def contains(self, t) -> np.ndarray:
        t = wrap_angle(np.asarray(t, dtype=float))
        out = np.zeros(t.shape, bool)
        for a, b in self.arcs:
            out |= (t >= a) & (t <= b)
        return out

    def indicator(self, inside: float = 1.0, outside: float = 0.0) -> "StepSymbol":
        bps = [0.0]
        vals = []
        for a, b in self.arcs:
            if a > bps[-1]:
                vals.append(outside)
                bps.append(a)
            elif vals:
                pass
            vals.append(inside)
            bps.append(b)
        if bps[-1] < TWO_PI:
            vals.append(outside)
            bps.append(TWO_PI)
        if not vals:
            vals, bps = [outside], [0.0, TWO_PI]
        bps[-1] = TWO_PI
        return StepSymbol(bps, vals)

    def to_json(self) -> dict:
        return self.indicator().to_json()


@dataclass(frozen=True, eq=False)
class StepSymbol:
    """Piecewise-constant function on the circle.

    ``values[k]`` is the value on ``(breakpoints[k], breakpoints[k+1])``; the
    breakpoints run from ``0`` to ``2*pi``. Adjacent equal values are merged,
    so every interior breakpoint is a genuine jump. The value at a jump is
    undefined and evaluating there raises :class:`NodeAtJump`.
    """

    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        bp = np.array(self.breakpoints, dtype=float).ravel()
        v = np.array(self.values, dtype=float).ravel()
        if len(bp) != len(v) + 1 or len(v) == 0:
            raise ValueError("need len(breakpoints) == len(values) + 1 >= 2")
        if abs(bp[0]) > BREAK_TOL or abs(bp[-1] - TWO_PI) > BREAK_TOL:
            raise ValueError("breakpoints must start at 0 and end at 2*pi")
        bp[0], bp[-1] = 0.0, TWO_PI
        if np.any(np.diff(bp) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise ValueError("values must be finite")
        keep = np.ones(len(v), bool)
        keep[1:] = v[1:] != v[:-1]
        bp = np.append(bp[:-1][keep], TWO_PI)
        v = v[keep]
        object.__setattr__(self, "breakpoints", _frozen(bp))
        object.__setattr__(self, "values", _frozen(v))

    @classmethod
    def constant(cls, c: float) -> "StepSymbol":
        return cls([0.0, TWO_PI], [c])

    @property
    def is_constant(self) -> bool:
        return len(self.values) == 1

    def jumps(self):
        """``(angles, sizes)`` of all jumps, size = value after - value before."""
        v = self.values
        angles = list(self.breakpoints[1:-1])
        sizes = list(v[1:] - v[:-1])
        if v[0] != v[-1]:
            angles.insert(0, 0.0)
            sizes.insert(0, v[0] - v[-1])
        return np.array(angles), np.array(sizes)

    def essential_range(self) -> np.ndarray:
        return np.unique(self.values)

    @property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def _check_nodes(self, t: np.ndarray):
        angles, _ = self.jumps()
        if len(angles):
            d = np.abs(signed_angle(t[..., None] - angles))
            if np.any(d < BREAK_TOL):
                raise NodeAtJump("evaluation point coincides with a jump")

    def __call__(self, t):
        t = wrap_angle(np.asarray(t, dtype=float))
        self._check_nodes(t)
        k = np.searchsorted(self.breakpoints, t, side="right") - 1
        return self.values[np.clip(k, 0, len(self.values) - 1)]

    def near(self, anchor: float, delta):
        """Values at ``anchor + delta`` for tiny ``delta``, resolved by side."""
        delta = np.asarray(delta, dtype=float)
        if np.any(delta == 0):
            raise NodeAtJump("zero offset from anchor")
        nudged = np.where(np.abs(delta) < 1e-9, np.sign(delta) * 1e-9, delta)
        t = wrap_angle(anchor + nudged)
        k = np.searchsorted(self.breakpoints, t, side="right") - 1
        return self.values[np.clip(k, 0, len(self.values) - 1)]

    def __mul__(self, c: float) -> "StepSymbol":
        return StepSymbol(self.breakpoints, self.values * c)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __add__(self, other):
        if isinstance(other, StepSymbol):
            return _combine(self, other, np.add)
        return StepSymbol(self.breakpoints, self.values + other)

    def rotate(self, phi: float) -> "StepSymbol":
        """``t -> f(t - phi)``."""
        angles, _ = self.jumps()
        if not len(angles):
            return self
        bp = np.unique(np.concatenate([[0.0, TWO_PI], wrap_angle(angles + phi)]))
        bp = bp[np.concatenate([[True], np.diff(bp) > BREAK_TOL])]
        bp[-1] = TWO_PI
        mid = 0.5 * (bp[:-1] + bp[1:])
        return StepSymbol(bp, self(mid - phi))

    def to_json(self) -> dict:
        return {"breakpoints": [float(b) for b in self.breakpoints],
                "values": [float(v) for v in self.values]}

    @classmethod
    def from_json(cls, obj) -> "StepSymbol":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(obj["breakpoints"], obj["values"])


def _combine(f: StepSymbol, g: StepSymbol, op) -> StepSymbol:
    bp = np.union1d(f.breakpoints, g.breakpoints)
    # drop near-duplicate breakpoints
    bp = bp[np.concatenate([[True], np.diff(bp) > BREAK_TOL])]
    bp[-1] = TWO_PI
    mid = 0.5 * (bp[:-1] + bp[1:])
    return StepSymbol(bp, op(f(mid), g(mid)))


# ---------------------------------------------------------------------------
# sampled functions


@dataclass(frozen=True, eq=False)
class SampledFn:
    """Values of a circle function on the nodes of a grid.

    ``singular`` optionally flags nodes where the value is known to be
    infinite; all other values must be finite.
    """

    grid: Grid
    values: np.ndarray
    singular: np.ndarray | None = None

    def __post_init__(self):
        v = np.asarray(self.values)
        v = v.astype(complex if np.iscomplexobj(v) else float)
        if v.shape != (len(self.grid.nodes),):
            raise ValueError(f"expected {len(self.grid.nodes)} values, got shape {v.shape}")
        mask = np.zeros(len(v), bool) if self.singular is None else np.asarray(self.singular, bool)
        if not np.all(np.isfinite(v[~mask])):
            raise ValueError("non-finite sample at a node not flagged singular")
        object.__setattr__(self, "values", _frozen(v))
        object.__setattr__(self, "singular", _frozen(mask))

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes

    @property
    def weights(self) -> np.ndarray:
        return self.grid.weights

    def __mul__(self, c):
        return SampledFn(self.grid, self.values * c, self.singular)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, SampledFn):
            if other.grid is not self.grid and not np.array_equal(other.nodes, self.nodes):
                raise ValueError("samples live on different grids")
            return SampledFn(self.grid, self.values + other.values, self.singular | other.singular)
        return SampledFn(self.grid, self.values + other, self.singular)

    def mean(self) -> float:
        return complex(np.sum(self.weights * self.values) / TWO_PI) if np.iscomplexobj(self.values) \
            else float(np.sum(self.weights * self.values) / TWO_PI)


# ---------------------------------------------------------------------------
# operations


def rho(E: ArcSet) -> StepSymbol:
    """Signed indicator ``2*chi_E - 1``: +1 on ``E``, -1 off it."""
    return E.indicator(1.0, -1.0)


def scale_symbol(f: StepSymbol, g: StepSymbol) -> StepSymbol:
    """Pointwise product of two step symbols on the merged breakpoints."""
    if not isinstance(f, StepSymbol):
        f = StepSymbol.constant(float(f))
    return _combine(f, g, np.multiply)


def sample(f: Union[TrigPoly, StepSymbol, Callable], grid: Grid) -> SampledFn:
    """Evaluate ``f`` on the nodes of ``grid``.

    Step symbols on a :class:`GradedGrid` are evaluated from the exact
    anchor offsets, so clustered nodes a hair away from a jump pick the
    correct side.
    """
    nodes = grid.nodes
    if isinstance(f, StepSymbol):
        if isinstance(grid, GradedGrid) and grid.anchors:
            vals = np.empty(len(nodes))
            close = (grid.near >= 0) & (np.abs(grid.delta) < 1e-6)
            far = ~close
            vals[far] = f(nodes[far])
            anchors = np.asarray(grid.anchors)
            if np.any(close):
                vals[close] = _near_values(f, anchors[grid.near[close]], grid.delta[close])
            return SampledFn(grid, vals)
        return SampledFn(grid, f(nodes))
    return SampledFn(grid, f(nodes))


def cell_average(f: StepSymbol, grid: CircleGrid) -> SampledFn:
    """Average of a step symbol over each cell ``[node - h/2, node + h/2]``.

    Unlike point samples, cell averages record where inside a cell a jump
    sits, which keeps grid-based conjugates accurate for jumps at arbitrary
    angles.
    """
    bp, v = f.breakpoints, f.values
    prim = np.concatenate([[0.0], np.cumsum(np.diff(bp) * v)])
    total = prim[-1]

    def antiderivative(t):
        k = np.floor(t / TWO_PI)
        return k * total + np.interp(t - k * TWO_PI, bp, prim)

    h = grid.spacing
    lo, hi = grid.nodes - h / 2, grid.nodes + h / 2
    return SampledFn(grid, (antiderivative(hi) - antiderivative(lo)) / h)


def _near_values(f: StepSymbol, anchors, deltas):
    out = np.empty(len(deltas))
    for i, (a, d) in enumerate(zip(anchors, deltas)):
        out[i] = f.near(a, d)
    return out


def essential_range_gap(f: StepSymbol) -> float:
    """Length of the largest open interval between ``min`` and ``max`` of the
    essential range that the range avoids (``0`` for a single value)."""
    r = f.essential_range()
    return float(np.max(np.diff(r))) if len(r) > 1 else 0.0
