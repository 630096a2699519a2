"""Matrix counts with fixed trace t and determinant r.

Sharp box count S(X), the smoothed count S_w(X) by two independent
enumerations, and the smoothed restricted divisor sums.

Both smoothed algorithms only enumerate the integer incidences (a, b, c)
with every weight argument strictly inside (1/2, 1). The weights are then
evaluated on the canonically sorted incidence list and summed with
math.fsum, so the reported value depends only on the set of incidences and
not on enumeration order or worker count.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

import numpy as np

from .arith import divisors_in_range, is_fundamental_discriminant
from .qcong import RootTable
from .weights import CANONICAL, SmoothWeight, bump_eval

EXACT_BOX_MAX_X = 10**6


@dataclass(frozen=True)
class CharPolyParams:
    """Parameters of P(x) = x^2 - t x + r together with the box scale X."""

    t: int
    r: int
    X: float

    def __post_init__(self):
        if int(self.t) != self.t or int(self.r) != self.r:
            raise ValueError("t and r must be integers")
        if self.t % 2:
            raise ValueError(f"t must be even, got {self.t}")
        if self.X < 0:
            raise ValueError(f"X must be nonnegative, got {self.X}")

    @property
    def D(self) -> int:
        return self.t * self.t // 4 - self.r

    def require_fundamental(self) -> "CharPolyParams":
        if not is_fundamental_discriminant(self.D):
            raise ValueError(f"D = t^2/4 - r = {self.D} is not a positive fundamental discriminant")
        return self


@dataclass
class CountResult:
    value: float
    method: str
    elapsed: float
    terms: int


def _frac(X) -> Fraction:
    return Fraction(X) if not isinstance(X, Fraction) else X


def open_range(lo: Fraction, hi: Fraction) -> Tuple[int, int]:
    """Inclusive integer bounds of the open interval (lo, hi); may be empty (lo > hi)."""
    return math.floor(lo) + 1, math.ceil(hi) - 1


def a_support(t: int, X) -> Tuple[int, int]:
    """Integers a with a/X and (t - a)/X both in (1/2, 1)."""
    Xq = _frac(X)
    lo1, hi1 = open_range(Xq / 2, Xq)
    lo2, hi2 = open_range(t - Xq, t - Xq / 2)
    return max(lo1, lo2), min(hi1, hi2)


def _chunks(lo: int, hi: int, parts: int) -> List[Tuple[int, int]]:
    if hi < lo:
        return []
    parts = max(1, min(parts, hi - lo + 1))
    edges = np.linspace(lo, hi + 1, parts + 1).round().astype(np.int64).tolist()
    return [(edges[i], edges[i + 1] - 1) for i in range(parts) if edges[i + 1] > edges[i]]


def _run_chunks(func: Callable, args: tuple, lo: int, hi: int, workers: int):
    chunks = _chunks(lo, hi, workers)
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(func, *zip(*[args + c for c in chunks])))
    else:
        parts = [func(*(args + c)) for c in chunks]
    out = [[], [], []]
    for part in parts:
        for dst, src in zip(out, part):
            dst.extend(src)
    return out


def _direct_chunk(t: int, r: int, num: int, den: int, a_lo: int, a_hi: int):
    Xq = Fraction(num, den)
    b_lo, b_hi = open_range(Xq / 2, Xq)
    A, B, C = [], [], []
    for a in range(a_lo, a_hi + 1):
        n = a * (t - a) - r
        if n <= 0:
            continue
        # c = n / b in (X/2, X)  <=>  n/X < b < 2n/X
        lo = max(b_lo, (n * den) // num + 1)
        hi = min(b_hi, (2 * n * den - 1) // num)
        if lo > hi:
            continue
        for b in divisors_in_range(n, lo, hi):
            A.append(a)
            B.append(b)
            C.append(n // b)
    return A, B, C


def _congruence_chunk(t: int, r: int, num: int, den: int, b_lo: int, b_hi: int):
    Xq = Fraction(num, den)
    a_lo, a_hi = a_support(t, Xq)
    A, B, C = [], [], []
    D = t * t // 4 - r
    if a_lo > a_hi or D <= 0:
        return A, B, C
    half_t = t // 2
    table = RootTable(D, b_hi)
    for b in range(b_lo, b_hi + 1):
        for mu in table.roots(b):
            a = a_lo + (mu + half_t - a_lo) % b
            while a <= a_hi:
                n = a * (t - a) - r
                if n > 0:
                    c = n // b
                    if 2 * c * den > num and c * den < num:
                        A.append(a)
                        B.append(b)
                        C.append(c)
                a += b
    return A, B, C


def _weighted_total(cols: Sequence[np.ndarray], weight_args: Callable) -> float:
    if len(cols[0]) == 0:
        return 0.0
    order = np.lexsort(tuple(reversed(cols)))
    cols = [c[order] for c in cols]
    terms = np.ones(len(cols[0]))
    for u in weight_args(*cols):
        terms = terms * bump_eval(u)
    return math.fsum(terms.tolist())


def _matrix_total(t: int, X, A, B, C) -> float:
    Xf = float(X)
    cols = [np.asarray(v, dtype=np.int64) for v in (A, B, C)]
    return _weighted_total(cols, lambda a, b, c: (a / Xf, (t - a) / Xf, b / Xf, c / Xf))


def count_smoothed_direct(params: CharPolyParams, workers: int = 1) -> CountResult:
    """S_w(X) by factoring n = a(t - a) - r for each admissible a."""
    start = time.perf_counter()
    t, r = params.t, params.r
    Xq = _frac(params.X)
    a_lo, a_hi = a_support(t, Xq)
    A, B, C = _run_chunks(_direct_chunk, (t, r, Xq.numerator, Xq.denominator), a_lo, a_hi, workers)
    value = _matrix_total(t, Xq, A, B, C)
    return CountResult(value, "direct", time.perf_counter() - start, len(A))


def count_smoothed_congruence(params: CharPolyParams, workers: int = 1) -> CountResult:
    """S_w(X) by running over moduli b and the roots of a^2 - t a + r = 0 (mod b)."""
    start = time.perf_counter()
    t, r = params.t, params.r
    Xq = _frac(params.X)
    b_lo, b_hi = open_range(Xq / 2, Xq)
    A, B, C = _run_chunks(_congruence_chunk, (t, r, Xq.numerator, Xq.denominator), b_lo, b_hi, workers)
    value = _matrix_total(t, Xq, A, B, C)
    return CountResult(value, "congruence", time.perf_counter() - start, len(A))


def count_exact_box(params: CharPolyParams) -> int:
    """Sharp count of integer (a, b, c, d) with a + d = t, ad - bc = r, all entries in [-X, X]."""
    X = params.X
    if X != int(X):
        raise ValueError("the sharp count needs an integer X")
    X = int(X)
    if X > EXACT_BOX_MAX_X:
        raise ValueError(f"X = {X} exceeds the oracle guard {EXACT_BOX_MAX_X}")
    t, r = params.t, params.r
    total = 0
    for a in range(max(-X, t - X), min(X, t + X) + 1):
        n = a * (t - a) - r
        if n == 0:
            # b = 0 with any c, or c = 0 with b != 0
            total += 4 * X + 1
            continue
        if X == 0:
            continue
        m = abs(n)
        lo = -(-m // X)
        if lo > X:
            continue
        total += 2 * len(divisors_in_range(m, lo, X))
    return total


def tau_smoothed(n: int, X, w: SmoothWeight = CANONICAL) -> float:
    """Sum of w(b/X) w(c/X) over positive factorizations n = b c."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    Xq = _frac(X)
    if Xq <= 0:
        return 0.0
    b_lo, b_hi = open_range(Xq / 2, Xq)
    lo = max(b_lo, math.floor(n / Xq) + 1)
    hi = min(b_hi, math.ceil(2 * n / Xq) - 1)
    if lo > hi:
        return 0.0
    Xf = float(Xq)
    return math.fsum(float(w(b / Xf)) * float(w((n // b) / Xf)) for b in divisors_in_range(n, lo, hi))


def _corollary_direct_chunk(p: int, q: int, num: int, den: int, n_lo: int, n_hi: int):
    Xq = Fraction(num, den)
    b_lo, b_hi = open_range(Xq / 2, Xq)
    N, B, C = [], [], []
    for n in range(n_lo, n_hi + 1):
        g = n * n + 2 * p * n + q
        if g <= 0:
            continue
        lo = max(b_lo, (g * den) // num + 1)
        hi = min(b_hi, (2 * g * den - 1) // num)
        if lo > hi:
            continue
        for b in divisors_in_range(g, lo, hi):
            N.append(n)
            B.append(b)
            C.append(g // b)
    return N, B, C


def _corollary_congruence_chunk(p: int, q: int, num: int, den: int, b_lo: int, b_hi: int):
    Xq = Fraction(num, den)
    n_lo, n_hi = open_range(Xq / 2, Xq)
    N, B, C = [], [], []
    table = RootTable(p * p - q, b_hi)
    for b in range(b_lo, b_hi + 1):
        for mu in table.roots(b):
            n = n_lo + (mu - p - n_lo) % b
            while n <= n_hi:
                g = n * n + 2 * p * n + q
                if g > 0:
                    c = g // b
                    if 2 * c * den > num and c * den < num:
                        N.append(n)
                        B.append(b)
                        C.append(c)
                n += b
    return N, B, C


def corollary_sum(p: int, q: int, X, method: str = "congruence", workers: int = 1) -> CountResult:
    """Sum over n of tau_{X,w}(n^2 + 2pn + q) w(n/X)."""
    delta = p * p - q
    if not is_fundamental_discriminant(delta):
        raise ValueError(f"p^2 - q = {delta} is not a positive fundamental discriminant")
    start = time.perf_counter()
    Xq = _frac(X)
    lo, hi = open_range(Xq / 2, Xq)
    if method == "direct":
        chunk = _corollary_direct_chunk
    elif method == "congruence":
        chunk = _corollary_congruence_chunk
    else:
        raise ValueError(f"unknown method {method!r}")
    N, B, C = _run_chunks(chunk, (p, q, Xq.numerator, Xq.denominator), lo, hi, workers)
    Xf = float(Xq)
    cols = [np.asarray(v, dtype=np.int64) for v in (N, B, C)]
    value = _weighted_total(cols, lambda n, b, c: (n / Xf, b / Xf, c / Xf))
    return CountResult(value, method, time.perf_counter() - start, len(N))
