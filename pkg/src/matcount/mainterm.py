"""The constant gamma_D(1) = K(1) M(1) / zeta(2) and the main-term integrals."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np
from scipy.special import erfc, exp1

from .arith import Discriminant, as_discriminant, kronecker
from .counting import CharPolyParams
from .qcong import rho_prime_power, rho_table
from .weights import BUMP_PEAK, QuadratureSpec, bump_eval, integrate_2d, quadratic_band

ZETA2 = math.pi**2 / 6

# the odd-l series is summed directly only while it stays this short
SERIES_BUDGET = 2 * 10**7
SERIES_HARD_LIMIT = 10**9
_CHUNK = 1 << 22


@dataclass(frozen=True)
class GammaDecomposition:
    D: int
    K1: float
    M1: float
    zeta2: float
    gamma: float
    err_K: float
    err_M: float
    method: str

    @property
    def err_gamma(self) -> float:
        return (self.K1 * self.err_M + self.M1 * self.err_K) / self.zeta2


def _fundamental(D) -> Discriminant:
    return as_discriminant(D).require_fundamental()


def K1(D) -> Tuple[float, float]:
    """(2/3) sum_n rho(2^n) / 2^n, summed exactly; returns (value, error bound)."""
    d = _fundamental(D).D
    v2 = (d & -d).bit_length() - 1
    stable = v2 + 3
    total = Fraction(0)
    for n in range(stable + 1):
        total += Fraction(rho_prime_power(d, 2, n), 2**n)
    # rho(2^n) is constant for n > stable: geometric tail
    total += Fraction(rho_prime_power(d, 2, stable + 1), 2**stable)
    return float(Fraction(2, 3) * total), 0.0


def character_period(D: int) -> np.ndarray:
    """kronecker(D, l) restricted to odd l, for l = 0 .. 4D - 1."""
    P = 4 * D
    chi = np.zeros(P, dtype=np.float64)
    for l in range(1, P, 2):
        chi[l] = kronecker(D, l)
    return chi


def series_terms_needed(D: int, tol: float) -> int:
    P = 4 * D
    L = 2.0 * math.sqrt(D) * math.log(D) / tol
    return int(math.ceil(L / P)) * P


def M1_series(D, tol: float = 1e-6) -> Tuple[float, float]:
    """Odd-l character series summed over whole periods, with a Polya-Vinogradov tail bound."""
    d = _fundamental(D).D
    P = 4 * d
    L = series_terms_needed(d, tol)
    if L > SERIES_HARD_LIMIT:
        raise ValueError(f"series for D = {d} at tol {tol:g} needs {L} terms (limit {SERIES_HARD_LIMIT})")
    chi = character_period(d)
    if chi.sum() != 0:
        raise AssertionError(f"character for D = {d} does not sum to zero over a period")
    support = np.flatnonzero(chi)
    vals = chi[support]
    periods = L // P
    per_chunk = max(1, _CHUNK // len(support))
    partials = []
    for j0 in range(0, periods, per_chunk):
        j = np.arange(j0, min(periods, j0 + per_chunk), dtype=np.float64)
        denom = support[None, :] + P * j[:, None]
        partials.append(float(np.sum(vals[None, :] / denom)))
    err = 2.0 * math.sqrt(d) * math.log(d) / L
    return math.fsum(partials), err


def _smoothed_tail(D: int, N: int) -> float:
    x = math.pi * N * N / D
    ratio = math.exp(-2 * math.pi * N / D)
    coef = 1.0 / N + math.sqrt(D) / (math.pi * N * N)
    return math.exp(-x) * coef * ratio / (1.0 - ratio)


def L1_smoothed(D, tol: float = 1e-12) -> Tuple[float, float]:
    """L(1, chi_D) from the exactly balanced erfc / E1 expansion of the even primitive character."""
    d = _fundamental(D).D
    N = max(8, int(math.sqrt(d * 30 / math.pi)))
    while _smoothed_tail(d, N) > tol / 10:
        N = int(N * 1.25) + 1
    n = np.arange(1, N + 1)
    chi = np.array([kronecker(d, k) for k in range(1, N + 1)], dtype=np.float64)
    x = math.pi * n * n / d
    terms = chi * (erfc(n * math.sqrt(math.pi / d)) / n + exp1(x) / math.sqrt(d))
    value = math.fsum(terms.tolist())
    err = _smoothed_tail(d, N) + 4 * np.finfo(float).eps * math.fsum(np.abs(terms).tolist())
    return value, err


def M1_smoothed(D, tol: float = 1e-12) -> Tuple[float, float]:
    d = _fundamental(D).D
    L, err = L1_smoothed(d, tol)
    factor = 1.0 - kronecker(d, 2) / 2.0
    return factor * L, factor * err


def M1(D, tol: float = 1e-6, method: str = "auto") -> Tuple[float, float, str]:
    """Sum over odd l of kronecker(D, l)/l; returns (value, error bound, method used)."""
    d = _fundamental(D).D
    if method == "auto":
        method = "series" if series_terms_needed(d, tol) <= SERIES_BUDGET else "smoothed"
    if method == "series":
        return (*M1_series(d, tol), "series")
    if method == "smoothed":
        return (*M1_smoothed(d, tol), "smoothed")
    raise ValueError(f"unknown method {method!r}")


def gamma1(D, tol: float = 1e-6, method: str = "auto") -> GammaDecomposition:
    d = _fundamental(D).D
    k, err_k = K1(d)
    m, err_m, used = M1(d, tol, method)
    return GammaDecomposition(d, k, m, ZETA2, k * m / ZETA2, err_k, err_m, used)


def main_term(params: CharPolyParams, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """M(X, D): the double integral over x and y of the four-weight product divided by y.

    Computed in the rescaled variables x = X u, y = X v, with the integrand
    divided by the bump peak to the fourth power so that tolerances are
    meaningful.
    """
    X = float(params.X)
    if X <= 0:
        return 0.0
    tau = params.t / X
    rho_ = params.r / (X * X)
    u_box = (max(0.5, tau - 1.0), min(1.0, tau - 0.5))
    if not u_box[1] > u_box[0]:
        return 0.0
    scale = BUMP_PEAK**4

    def integrand(u, v):
        n = u * (tau - u) - rho_
        return bump_eval(v) * bump_eval(u) * bump_eval(tau - u) * bump_eval(n / v) / (v * scale)

    def pieces(v):
        return quadratic_band((-1.0, tau, -rho_), 0.5 * v, v, u_box)

    return X * scale * integrate_2d(integrand, u_box, (0.5, 1.0), spec, x_pieces=pieces)


def corollary_main_term(p: int, q: int, X, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """The double integral of w(y/X) w(x/X) w((x^2 + 2px + q)/(yX)) / y."""
    delta = p * p - q
    _fundamental(delta)
    X = float(X)
    if X <= 0:
        return 0.0
    lin, const = 2.0 * p / X, q / (X * X)
    u_box = (0.5, 1.0)
    scale = BUMP_PEAK**3

    def integrand(u, v):
        g = (u + lin) * u + const
        return bump_eval(v) * bump_eval(u) * bump_eval(g / v) / (v * scale)

    def pieces(v):
        return quadratic_band((1.0, lin, const), 0.5 * v, v, u_box)

    return X * scale * integrate_2d(integrand, u_box, (0.5, 1.0), spec, x_pieces=pieces)


@dataclass(frozen=True)
class HooleyRow:
    y: int
    rho_sum: int
    expected: float
    residual: float
    scaled: float


def hooley_residual_scan(D, ys: Sequence[int], gamma: GammaDecomposition = None) -> List[HooleyRow]:
    """Compare sum_{k<=y} rho(k) with y * gamma_D(1) at each y."""
    ys = [int(y) for y in ys]
    if any(b < a for a, b in zip(ys, ys[1:])):
        raise ValueError("ys must be ascending")
    if gamma is None:
        gamma = gamma1(D)
    sums = np.cumsum(rho_table(D, ys[-1]))
    rows = []
    for y in ys:
        s = int(sums[y])
        expected = y * gamma.gamma
        residual = s - expected
        rows.append(HooleyRow(y, s, expected, residual, residual / y**0.75))
    return rows
