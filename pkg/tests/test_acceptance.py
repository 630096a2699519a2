"""Acceptance suite. Each test prints one PASS/FAIL line with the measured numbers."""

import itertools
import math
import time

import numpy as np
import pytest

from matcount.arith import is_fundamental_discriminant
from matcount.counting import CharPolyParams, corollary_sum, count_exact_box, count_smoothed_congruence, count_smoothed_direct
from matcount.harness import pick_params, theorem_row
from matcount.mainterm import corollary_main_term, gamma1, hooley_residual_scan, main_term
from matcount.qcong import RootTable, rho
from matcount.weights import QuadratureSpec
from matcount.weyl import dfi_grid, poisson_check, weyl_single
from oracles import exact_box_quadruple

pytestmark = pytest.mark.slow


@pytest.fixture
def report(capsys):
    def emit(label: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        assert ok, f"{label}: {detail}"

    return emit


def test_c1_dual_algorithm_exactness(report):
    start = time.perf_counter()
    shapes = np.linspace(1.1, 1.9, 10).tolist()
    sets = [pick_params(X, s) for X in (10**3, 10**4) for s in shapes]
    sets.append(CharPolyParams(30, 4, 20))
    worst = 0.0
    for p in sets:
        d = count_smoothed_direct(p).value
        c = count_smoothed_congruence(p).value
        if d == c:
            continue
        worst = max(worst, abs(d - c) / abs(c))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 60
    report("C1 dual-algorithm exactness", ok, f"{len(sets)} sets, max rel diff {worst:.3g}, {elapsed:.1f}s")


def test_c2_exact_box_oracle(report):
    start = time.perf_counter()
    mismatches = []
    cases = 0
    for t, r in itertools.product(range(-4, 5, 2), range(-4, 5)):
        for X in range(11):
            cases += 1
            if count_exact_box(CharPolyParams(t, r, X)) != exact_box_quadruple(t, r, X):
                mismatches.append((t, r, X))
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 60
    report("C2 exact box vs quadruple loop", ok, f"{cases} cases, {len(mismatches)} mismatches, {elapsed:.1f}s")


def test_c3_hooley_average(report):
    start = time.perf_counter()
    ys = [10**3, 10**4, 10**5, 10**6, 10**7]
    worst_scaled, worst_dev = 0.0, 0.0
    lines = []
    for D in (5, 8, 12, 13, 17):
        g = gamma1(D, 1e-10)
        rows = hooley_residual_scan(D, ys, g)
        worst_scaled = max(worst_scaled, max(abs(r.scaled) for r in rows))
        last = rows[-1]
        dev = abs(last.rho_sum / last.y - g.gamma) / last.y**-0.25
        worst_dev = max(worst_dev, dev)
        lines.append(f"D={D} gamma={g.gamma:.10f} avg@1e7={last.rho_sum / last.y:.10f}")
    elapsed = time.perf_counter() - start
    ok = worst_scaled <= 10 and worst_dev <= 10 and elapsed < 300
    detail = f"max |res|/y^(3/4) {worst_scaled:.3f}, max dev*y^(1/4) {worst_dev:.3f}, {elapsed:.1f}s; " + "; ".join(lines)
    report("C3 Hooley average", ok, detail)


def test_c4_poisson(report):
    start = time.perf_counter()
    errs = [poisson_check("gaussian", a, q) for a, q in ((0, 1), (3, 7), (1, 12))]
    elapsed = time.perf_counter() - start
    ok = max(errs) <= 1e-10 and elapsed < 1
    report("C4 Poisson identity", ok, f"max discrepancy {max(errs):.3g}, {elapsed:.3f}s")


def test_c5_weyl_sums(report):
    start = time.perf_counter()
    bad_h0 = 0
    for D in (5, 13):
        table = RootTable(D, 10**4)
        for c in range(1, 10**4 + 1):
            if weyl_single(0, D, c) != len(table.roots(c)):
                bad_h0 += 1
    rng = np.random.default_rng(20241015)
    discs = [d for d in range(5, 2001) if is_fundamental_discriminant(d)]
    bad_tri = 0
    for h, D, c in zip(rng.integers(-1000, 1001, 10**4), rng.choice(discs, 10**4), rng.integers(1, 10**4 + 1, 10**4)):
        if abs(weyl_single(int(h), int(D), int(c))) > rho(int(D), int(c)) + 1e-9:
            bad_tri += 1
    max_ratio = max(row.ratio for row in dfi_grid())
    elapsed = time.perf_counter() - start
    ok = bad_h0 == 0 and bad_tri == 0 and max_ratio <= 100 and elapsed < 120
    report("C5 Weyl sums", ok, f"h=0 mismatches {bad_h0}, |W|>rho {bad_tri}, max DFI ratio {max_ratio:.3g}, {elapsed:.1f}s")


def test_c6_corollary_convergence(report):
    start = time.perf_counter()
    g = gamma1(5, 1e-10).gamma
    ratios = {}
    for X in (10**4, 10**5):
        ratios[X] = corollary_sum(0, -5, X).value / (g * corollary_main_term(0, -5, X))
    elapsed = time.perf_counter() - start
    ok = 0.9 <= ratios[10**4] <= 1.1 and 0.95 <= ratios[10**5] <= 1.05 and elapsed < 300
    report("C6 corollary convergence", ok, f"ratio@1e4 {ratios[10**4]:.5f}, ratio@1e5 {ratios[10**5]:.5f}, {elapsed:.1f}s")


def test_c7_theorem_convergence(report):
    start = time.perf_counter()
    rows = {X: theorem_row(pick_params(X, 1.5)) for X in (10**4, 5 * 10**4)}
    elapsed = time.perf_counter() - start
    r1, r2 = rows[10**4].ratio, rows[5 * 10**4].ratio
    ok = 0.85 <= r1 <= 1.15 and 0.9 <= r2 <= 1.1
    detail = (
        f"ratio@1e4 {r1:.5f} (D={rows[10**4].D}), ratio@5e4 {r2:.5f} (D={rows[5 * 10**4].D}), {elapsed:.1f}s"
    )
    report("C7 theorem convergence", ok, detail)


def test_c8_main_term_linear_in_X(report):
    start = time.perf_counter()
    Xs = [10**3, 2 * 10**3, 4 * 10**3, 8 * 10**3]
    scaled = [main_term(pick_params(X)) / X for X in Xs]
    steps = [max(a, b) / min(a, b) for a, b in zip(scaled, scaled[1:])]
    elapsed = time.perf_counter() - start
    ok = all(v > 0 for v in scaled) and max(steps) < 2 and elapsed < 60
    report("C8 main term ~ X", ok, f"M/X {[f'{v:.4g}' for v in scaled]}, max step factor {max(steps):.4f}, {elapsed:.1f}s")


def test_c9_quadrature_stability(report):
    start = time.perf_counter()
    p = pick_params(10**4)
    spec = QuadratureSpec()
    base = main_term(p, spec)
    fine = main_term(p, spec.tightened(10))
    rel = abs(fine - base) / abs(fine)
    elapsed = time.perf_counter() - start
    ok = rel < 1e-6 and elapsed < 60
    report("C9 quadrature stability", ok, f"rel change {rel:.3g}, {elapsed:.2f}s")
