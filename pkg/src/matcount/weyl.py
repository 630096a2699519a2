"""Weyl sums over roots of nu^2 = D (mod c), their smooth averages, and a Poisson summation checker."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .arith import Discriminant
from .qcong import RootTable, roots_mod
from .weights import BUMP_PEAK, CANONICAL, QuadratureSpec, bump_eval, integrate_1d

DFI_EXPONENT = 1.0 / 8 - 1.0 / 1331


def _int(D) -> int:
    return D.D if isinstance(D, Discriminant) else int(D)


def e_rational(num: int, den: int) -> complex:
    """exp(2 pi i num/den), reducing num mod den exactly before going to floating point."""
    x = 2.0 * math.pi * ((num % den) / den)
    return complex(math.cos(x), math.sin(x))


def _phase_sum(h: int, roots: Iterable[int], c: int) -> complex:
    re, im = [], []
    for nu in roots:
        z = e_rational(h * nu, c)
        re.append(z.real)
        im.append(z.imag)
    return complex(math.fsum(re), math.fsum(im))


def weyl_single(h: int, D, c: int) -> complex:
    """W_h(D; c): sum of e(h nu / c) over nu mod c with nu^2 = D (mod c)."""
    if c < 1:
        raise ValueError(f"modulus must be >= 1, got {c}")
    return _phase_sum(int(h), roots_mod(_int(D), c).roots, c)


@dataclass(frozen=True)
class WeylQuery:
    """Frequency h, discriminant D, divisibility class q and scale Y of an averaged Weyl sum.

    The test function is v(y) = w(y / 2Y) / norm, supported in [Y, 2Y]. norm is
    the smallest constant for which sup|v| <= 1 and Y^3 sup|v'''| <= 1 still
    hold under the (doubled) grid estimates of the bump's derivatives, so v is
    as large as the hypotheses of the bound permit.
    """

    h: int
    D: int
    q: int = 1
    Y: float = 100.0

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be >= 1")
        if self.Y < 1:
            raise ValueError("Y must be >= 1")

    @property
    def norm(self) -> float:
        c0, _, _, c3 = CANONICAL.derivative_bounds
        return max(c0, c3 / 8.0)

    def v(self, y):
        return bump_eval(np.asarray(y, dtype=float) / (2.0 * self.Y)) / self.norm

    def moduli(self) -> range:
        lo = math.ceil(self.Y)
        lo += (-lo) % self.q
        return range(lo, math.floor(2 * self.Y) + 1, self.q)


def weyl_averaged(query: WeylQuery, table: Optional[RootTable] = None) -> complex:
    """Sum over c = 0 (mod q) in [Y, 2Y] of v(c) W_h(D; c)."""
    cs = query.moduli()
    if len(cs) == 0:
        return 0j
    if table is None:
        table = RootTable(_int(query.D), cs[-1])
    weights = query.v(np.array(cs, dtype=float))
    re, im = [], []
    for c, wc in zip(cs, weights.tolist()):
        if wc == 0.0:
            continue
        z = _phase_sum(query.h, table.roots(c), c)
        re.append(wc * z.real)
        im.append(wc * z.imag)
    return complex(math.fsum(re), math.fsum(im))


def dfi_bound(h: int, D: int, Y: float) -> float:
    return h**0.25 * (Y + h * math.sqrt(D)) ** 0.75 * D**DFI_EXPONENT


def dfi_bound_ratio(query: WeylQuery, table: Optional[RootTable] = None) -> float:
    """|W_h(D)| divided by h^(1/4) (Y + h sqrt D)^(3/4) D^(1/8 - 1/1331)."""
    if query.h < 1:
        raise ValueError("the bound needs h >= 1")
    return abs(weyl_averaged(query, table)) / dfi_bound(query.h, _int(query.D), query.Y)


@dataclass(frozen=True)
class DFIRow:
    h: int
    D: int
    Y: float
    q: int
    value: complex
    bound: float
    ratio: float


def dfi_grid(
    hs: Sequence[int] = (1, 2, 4, 8),
    Ys: Sequence[float] = (1e2, 1e3, 1e4),
    Ds: Sequence[int] = (5, 8, 13, 17, 10001),
    q: int = 1,
) -> List[DFIRow]:
    rows = []
    for D in Ds:
        table = RootTable(D, int(2 * max(Ys)))
        for Y in Ys:
            for h in hs:
                query = WeylQuery(h, D, q, Y)
                val = weyl_averaged(query, table)
                bound = dfi_bound(h, D, Y)
                rows.append(DFIRow(h, D, Y, q, val, bound, abs(val) / bound))
    return rows


# -- Poisson summation over an arithmetic progression ------------------------


def _gaussian(sigma: float):
    f = lambda x: np.exp(-np.asarray(x, dtype=float) ** 2 / (2 * sigma * sigma))
    fhat = lambda xi: complex(sigma * math.sqrt(2 * math.pi) * math.exp(-2 * (math.pi * sigma * xi) ** 2))
    return f, fhat


def _bump_dilate(X: float, spec: QuadratureSpec):
    f = lambda x: bump_eval(np.asarray(x, dtype=float) / X)

    def fhat(xi: float) -> complex:
        # X * int w(u) e(-X u xi) du, integrand scaled by the bump peak
        k = 2 * math.pi * X * xi
        re = integrate_1d(lambda u: bump_eval(u) * np.cos(k * u) / BUMP_PEAK, 0.5, 1.0, spec)
        im = integrate_1d(lambda u: -bump_eval(u) * np.sin(k * u) / BUMP_PEAK, 0.5, 1.0, spec)
        return complex(re, im) * X * BUMP_PEAK

    return f, fhat


def poisson_sides(
    profile: str = "gaussian",
    alpha: int = 0,
    q: int = 1,
    trunc: int = 40,
    scale: Optional[float] = None,
    spec: QuadratureSpec = QuadratureSpec(1e-12, 1e-15),
) -> Tuple[complex, complex]:
    """Both sides of sum_{n = alpha (q)} f(n) = (1/q) sum_n e(alpha n / q) fhat(n / q), truncated at |n| <= trunc.

    profile "gaussian" uses f(x) = exp(-x^2 / 2 sigma^2) with sigma = scale
    (default 1.5); "bump" uses f(x) = w(x / X) with X = scale (default 10).
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if profile == "gaussian":
        f, fhat = _gaussian(1.5 if scale is None else scale)
    elif profile == "bump":
        f, fhat = _bump_dilate(10.0 if scale is None else scale, spec)
    else:
        raise ValueError(f"unknown profile {profile!r}")
    ns = np.arange(-trunc, trunc + 1)
    prog = ns[(ns - alpha) % q == 0]
    lhs = math.fsum(f(prog).tolist())
    re, im = [], []
    for n in ns.tolist():
        z = e_rational(alpha * n, q) * fhat(n / q)
        re.append(z.real)
        im.append(z.imag)
    rhs = complex(math.fsum(re), math.fsum(im)) / q
    return complex(lhs), rhs


def poisson_check(profile: str = "gaussian", alpha: int = 0, q: int = 1, trunc: int = 40, scale=None) -> float:
    lhs, rhs = poisson_sides(profile, alpha, q, trunc, scale)
    return abs(lhs - rhs)
