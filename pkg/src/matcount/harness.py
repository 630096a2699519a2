"""Convergence studies: smoothed matrix counts and the divisor-sum corollary against their main terms."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

import numpy as np

from .arith import as_discriminant, is_fundamental_discriminant
from .counting import CharPolyParams, corollary_sum, count_smoothed_congruence, count_smoothed_direct
from .mainterm import corollary_main_term, gamma1, main_term
from .weights import BUMP_PEAK, QuadratureSpec, quadratic_band

CROSSCHECK_RTOL = 1e-9
CANDIDATE_WINDOW = 10**4
D_FRACTION = Fraction(55, 100)


@dataclass(frozen=True)
class ConvergenceRow:
    X: float
    t: int
    r: int
    D: int
    S_w: float
    M: float
    gamma: float
    main: float
    ratio: float
    residual: float

    @property
    def included(self) -> bool:
        """False for rows whose main term is too small for the ratio to mean anything."""
        return math.isfinite(self.ratio)


CSV_FIELDS = [f.name for f in fields(ConvergenceRow)]


def has_support(params: CharPolyParams, samples: int = 64) -> bool:
    """Sample y/X on a grid and ask whether the x-support of the main-term integrand is nonempty."""
    X = float(params.X)
    tau, rho_ = params.t / X, params.r / (X * X)
    box = (max(0.5, tau - 1.0), min(1.0, tau - 0.5))
    if not box[1] > box[0]:
        return False
    for v in np.linspace(0.5, 1.0, samples + 2)[1:-1]:
        if quadratic_band((-1.0, tau, -rho_), 0.5 * v, v, box):
            return True
    return False


def pick_params(X, shape: float = 1.5) -> CharPolyParams:
    """t = nearest even integer to shape*X, D fundamental just below 0.55 X^2."""
    if X < 10:
        raise ValueError(f"X must be >= 10, got {X}")
    if not 1.0 < shape < 2.0:
        raise ValueError(f"shape must lie in (1, 2), got {shape}")
    Xq = Fraction(X)
    t = 2 * round(Fraction(shape) * Xq / 2)
    half_sq = t * t // 4
    r = half_sq - math.floor(D_FRACTION * Xq * Xq)
    for _ in range(CANDIDATE_WINDOW):
        D = half_sq - r
        if D <= 0:
            break
        if is_fundamental_discriminant(D):
            params = CharPolyParams(t, r, X)
            if has_support(params):
                return params
        r += 1
    raise ValueError(f"no fundamental D with nonempty support found for X = {X}, shape = {shape}")


def _ratio(S: float, main: float, X: float) -> float:
    # main is compared against the integral's natural size X * peak^4
    if main < 1e-6 * X * BUMP_PEAK**4:
        return math.nan
    return S / main


def theorem_row(
    params: CharPolyParams,
    tol: float = 1e-8,
    spec: QuadratureSpec = QuadratureSpec(),
    crosscheck: bool = True,
    workers: int = 1,
) -> ConvergenceRow:
    S = count_smoothed_congruence(params, workers).value
    if crosscheck:
        S_direct = count_smoothed_direct(params, workers).value
        if abs(S - S_direct) > CROSSCHECK_RTOL * abs(S):
            raise AssertionError(f"direct {S_direct!r} and congruence {S!r} disagree at {params}")
    g = gamma1(params.D, tol).gamma
    M = main_term(params, spec)
    main = g * M
    X = float(params.X)
    return ConvergenceRow(X, params.t, params.r, params.D, S, M, g, main, _ratio(S, main, X), S - main)


def theorem_scan(
    Xs: Sequence[float],
    shape: float = 1.5,
    tol: float = 1e-8,
    spec: QuadratureSpec = QuadratureSpec(),
    crosscheck: bool = True,
    workers: int = 1,
) -> List[ConvergenceRow]:
    if any(b < a for a, b in zip(Xs, Xs[1:])):
        raise ValueError("Xs must be ascending")
    return [theorem_row(pick_params(X, shape), tol, spec, crosscheck, workers) for X in Xs]


def corollary_scan(
    Delta,
    Xs: Sequence[float],
    tol: float = 1e-8,
    spec: QuadratureSpec = QuadratureSpec(),
    workers: int = 1,
) -> List[ConvergenceRow]:
    """Rows for g(n) = n^2 - Delta (p = 0, q = -Delta); t and r carry 2p and q."""
    delta = as_discriminant(Delta).require_fundamental().D
    if any(b < a for a, b in zip(Xs, Xs[1:])):
        raise ValueError("Xs must be ascending")
    g = gamma1(delta, tol).gamma
    rows = []
    for X in Xs:
        S = corollary_sum(0, -delta, X, workers=workers).value
        M = corollary_main_term(0, -delta, X, spec)
        main = g * M
        Xf = float(X)
        rows.append(ConvergenceRow(Xf, 0, -delta, delta, S, M, g, main, _ratio(S, main, Xf), S - main))
    return rows


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return format(float(v), ".17g")


def rows_to_csv(rows: Iterable[ConvergenceRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in rows:
        writer.writerow([_fmt(getattr(row, name)) for name in CSV_FIELDS])
    return buf.getvalue()


def rows_to_json(rows: Iterable[ConvergenceRow]) -> str:
    out = []
    for row in rows:
        rec = asdict(row)
        for k, v in rec.items():
            if isinstance(v, float) and not math.isfinite(v):
                rec[k] = None
        out.append(rec)
    return json.dumps(out, indent=2) + "\n"
