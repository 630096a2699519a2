"""The canonical bump weight on [1/2, 1] and adaptive Gauss-Kronrod quadrature."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

SUPPORT = (0.5, 1.0)
BUMP_PEAK = math.exp(-16.0)

# Kronrod 15-point nodes on [-1, 1] (nonnegative half) and weights; the
# embedded 7-point Gauss rule uses the odd-indexed nodes.
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
_KW = np.concatenate([_WK[:-1], _WK[::-1]])
_GW = np.zeros(15)
_GW[1:7:2] = _WG[:3]
_GW[7] = _WG[3]
_GW[9:14:2] = _WG[2::-1]


def bump_eval(u):
    """exp(-1/((u - 1/2)(1 - u))) on (1/2, 1), exactly 0 elsewhere. Accepts scalars or arrays."""
    if np.ndim(u) == 0:
        u = float(u)
        if not 0.5 < u < 1.0:
            return 0.0
        return math.exp(-1.0 / ((u - 0.5) * (1.0 - u)))
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = (u > 0.5) & (u < 1.0)
    ui = u[inside]
    out[inside] = np.exp(-1.0 / ((ui - 0.5) * (1.0 - ui)))
    return out


@dataclass(frozen=True)
class SmoothWeight:
    """The canonical bump together with grid estimates of its derivative sup-norms."""

    grid_points: int = 20001
    safety: float = 2.0

    support = SUPPORT
    peak = BUMP_PEAK

    def __call__(self, u):
        return bump_eval(u)

    @cached_property
    def derivative_bounds(self) -> Tuple[float, float, float, float]:
        """(C0, C1, C2, C3): doubled central-difference estimates of sup|w^(j)|."""
        lo, hi = self.support
        u = np.linspace(lo, hi, self.grid_points)
        h = (hi - lo) / (self.grid_points - 1)
        f = lambda x: bump_eval(x)
        d0 = np.max(f(u))
        d1 = np.max(np.abs(f(u + h) - f(u - h)) / (2 * h))
        d2 = np.max(np.abs(f(u + h) - 2 * f(u) + f(u - h)) / h**2)
        d3 = np.max(np.abs(f(u + 2 * h) - 2 * f(u + h) + 2 * f(u - h) - f(u - 2 * h)) / (2 * h**3))
        return tuple(self.safety * float(d) for d in (d0, d1, d2, d3))


CANONICAL = SmoothWeight()


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class QuadratureSpec:
    rel: float = 1e-8
    abs: float = 1e-12
    max_depth: int = 40

    def __post_init__(self):
        if not (self.rel > 0 and self.abs > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")

    def tightened(self, factor: float) -> "QuadratureSpec":
        return QuadratureSpec(self.rel / factor, self.abs / factor, self.max_depth)


def _gk15(f, a: float, b: float) -> Tuple[float, float]:
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    fx = np.asarray(f(mid + half * _NODES), dtype=float)
    k = half * float(np.dot(_KW, fx))
    g = half * float(np.dot(_GW, fx))
    return k, abs(k - g)


def integrate_1d(f: Callable, a: float, b: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Globally adaptive G7-K15 quadrature; f must accept numpy arrays.

    Raises QuadratureError when an interval that still needs splitting has
    reached spec.max_depth.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    k, err = _gk15(f, a, b)
    # heap of (-err, a, b, value, depth)
    heap = [(-err, a, b, k, 0)]
    total, total_err = k, err
    while total_err > max(spec.rel * abs(total), spec.abs):
        neg_err, lo, hi, val, depth = heapq.heappop(heap)
        if depth >= spec.max_depth:
            raise QuadratureError(
                f"depth {spec.max_depth} reached on [{lo}, {hi}] with error {total_err:.3g}"
            )
        mid = 0.5 * (lo + hi)
        k1, e1 = _gk15(f, lo, mid)
        k2, e2 = _gk15(f, mid, hi)
        total += k1 + k2 - val
        total_err += e1 + e2 + neg_err
        heapq.heappush(heap, (-e1, lo, mid, k1, depth + 1))
        heapq.heappush(heap, (-e2, mid, hi, k2, depth + 1))
    # re-add from scratch to shed accumulated update rounding
    return math.fsum(item[3] for item in heap)


Interval = Tuple[float, float]


def integrate_2d(
    f: Callable,
    x_box: Interval,
    y_box: Interval,
    spec: QuadratureSpec = QuadratureSpec(),
    x_pieces: Optional[Callable[[float], Sequence[Interval]]] = None,
) -> float:
    """Iterated adaptive quadrature of f(x, y) over x_box x y_box.

    f is called as f(x_array, y_scalar). x_pieces(y), when given, lists the
    subintervals of x_box where the integrand may be nonzero for that y; the
    inner rule then integrates each piece separately so it never straddles a
    kink of the support.
    """
    inner = QuadratureSpec(spec.rel * 0.1, spec.abs * 0.1, spec.max_depth)

    def slice_integral(y: float) -> float:
        pieces = x_pieces(y) if x_pieces is not None else [x_box]
        return math.fsum(integrate_1d(lambda x: f(x, y), lo, hi, inner) for lo, hi in pieces if hi > lo)

    def outer(ys):
        return np.array([slice_integral(float(y)) for y in np.atleast_1d(ys)])

    return integrate_1d(outer, y_box[0], y_box[1], spec)


def quadratic_band(
    coeffs: Tuple[float, float, float], lo_val: float, hi_val: float, box: Interval
) -> List[Interval]:
    """Subintervals of box where lo_val < a x^2 + b x + c < hi_val."""
    a, b, c = coeffs
    x0, x1 = box
    if not x1 > x0:
        return []
    cuts = {x0, x1}
    for level in (lo_val, hi_val):
        cc = c - level
        if a == 0:
            if b != 0:
                cuts.add(-cc / b)
            continue
        disc = b * b - 4 * a * cc
        if disc < 0:
            continue
        sq = math.sqrt(disc)
        # numerically stable pair of roots
        q = -0.5 * (b + math.copysign(sq, b))
        for root in (q / a, cc / q if q != 0 else None):
            if root is not None:
                cuts.add(root)
    pts = sorted(x for x in cuts if x0 <= x <= x1)
    out: List[Interval] = []
    for lo, hi in zip(pts, pts[1:]):
        if hi <= lo:
            continue
        m = 0.5 * (lo + hi)
        val = (a * m + b) * m + c
        if lo_val < val < hi_val:
            if out and out[-1][1] == lo:
                out[-1] = (out[-1][0], hi)
            else:
                out.append((lo, hi))
    return out
