"""Command-line entry point: ``matcount <command> [flags]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import harness
from .counting import CharPolyParams, count_exact_box, count_smoothed_congruence, count_smoothed_direct
from .mainterm import gamma1, hooley_residual_scan, main_term
from .weights import QuadratureSpec
from .weyl import WeylQuery, dfi_bound, poisson_sides, weyl_averaged, weyl_single


def _float_list(text: str) -> List[float]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return [int(v) if v.is_integer() else v for v in vals]


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _number(text: str):
    v = float(text)
    return int(v) if v.is_integer() else v


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _record_to_text(record: Dict, fmt: str) -> str:
    if fmt == "json":
        clean = {k: (None if isinstance(v, float) and not math.isfinite(v) else v) for k, v in record.items()}
        return json.dumps(clean, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(record))
    writer.writerow([_fmt(v) for v in record.values()])
    return buf.getvalue()


def _records_to_text(records: List[Dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(records, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(records[0]) if records else [])
    for rec in records:
        writer.writerow([_fmt(v) for v in rec.values()])
    return buf.getvalue()


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")


def _print_record(record: Dict) -> None:
    width = max(len(k) for k in record)
    for k, v in record.items():
        print(f"{k:<{width}}  {_fmt(v)}")


def cmd_count(args) -> int:
    params = CharPolyParams(args.t, args.r, args.X)
    rec = {"t": args.t, "r": args.r, "X": args.X, "S": count_exact_box(params)}
    _print_record(rec)
    _emit(args, _record_to_text(rec, args.format))
    return 0


def cmd_smooth_count(args) -> int:
    params = CharPolyParams(args.t, args.r, args.X)
    cong = count_smoothed_congruence(params, args.threads)
    rec = {"t": args.t, "r": args.r, "X": args.X, "D": params.D, "S_w": cong.value, "terms": cong.terms}
    if args.method == "both":
        direct = count_smoothed_direct(params, args.threads)
        rec["S_w_direct"] = direct.value
        rec["agree"] = abs(direct.value - cong.value) <= harness.CROSSCHECK_RTOL * abs(cong.value)
    _print_record(rec)
    _emit(args, _record_to_text(rec, args.format))
    return 0 if rec.get("agree", True) else 1


def cmd_gamma(args) -> int:
    g = gamma1(args.D, args.tol)
    rec = {
        "D": g.D,
        "K1": g.K1,
        "err_K": g.err_K,
        "M1": g.M1,
        "err_M": float(g.err_M),
        "zeta2": g.zeta2,
        "gamma": g.gamma,
        "err_gamma": float(g.err_gamma),
        "M1_method": g.method,
    }
    _print_record(rec)
    _emit(args, _record_to_text(rec, args.format))
    return 0


def cmd_main_term(args) -> int:
    params = CharPolyParams(args.t, args.r, args.X)
    M = main_term(params, QuadratureSpec(rel=args.tol))
    rec = {"t": args.t, "r": args.r, "X": args.X, "D": params.D, "M": M}
    if params.D > 0:
        try:
            g = gamma1(params.D)
        except ValueError:
            g = None
        if g is not None:
            rec["gamma"] = g.gamma
            rec["main"] = g.gamma * M
    _print_record(rec)
    _emit(args, _record_to_text(rec, args.format))
    return 0


def cmd_rho_scan(args) -> int:
    rows = hooley_residual_scan(args.D, [int(y) for y in args.ys])
    records = [
        {"y": r.y, "rho_sum": r.rho_sum, "y_gamma": r.expected, "residual": r.residual, "residual_over_y34": r.scaled}
        for r in rows
    ]
    print(f"{'y':>12} {'sum rho':>12} {'y*gamma':>18} {'residual':>14} {'res/y^(3/4)':>12}")
    for r in rows:
        print(f"{r.y:>12} {r.rho_sum:>12} {r.expected:>18.6f} {r.residual:>14.4f} {r.scaled:>12.5f}")
    _emit(args, _records_to_text(records, args.format))
    return 0


def cmd_weyl(args) -> int:
    if args.c is not None:
        z = weyl_single(args.h, args.D, args.c)
        rec = {"h": args.h, "D": args.D, "c": args.c, "re": z.real, "im": z.imag, "abs": abs(z)}
    else:
        if args.h < 1:
            raise ValueError("the averaged bound needs --h >= 1")
        query = WeylQuery(args.h, args.D, args.q, args.Y)
        z = weyl_averaged(query)
        bound = dfi_bound(args.h, args.D, args.Y)
        rec = {
            "h": args.h,
            "D": args.D,
            "q": args.q,
            "Y": args.Y,
            "v_norm": query.norm,
            "re": z.real,
            "im": z.imag,
            "abs": abs(z),
            "bound": bound,
            "ratio": abs(z) / bound,
        }
    _print_record(rec)
    _emit(args, _record_to_text(rec, args.format))
    return 0


def cmd_poisson(args) -> int:
    lhs, rhs = poisson_sides(args.profile, args.alpha, args.q, args.trunc, args.scale)
    rec = {
        "profile": args.profile,
        "alpha": args.alpha,
        "q": args.q,
        "trunc": args.trunc,
        "lhs": lhs.real,
        "rhs_re": rhs.real,
        "rhs_im": rhs.imag,
        "discrepancy": abs(lhs - rhs),
    }
    _print_record(rec)
    _emit(args, _record_to_text(rec, args.format))
    return 0


def _print_rows(rows) -> None:
    print(f"{'X':>10} {'t':>8} {'D':>12} {'S_w':>14} {'main':>14} {'ratio':>9}")
    for r in rows:
        print(f"{r.X:>10g} {r.t:>8} {r.D:>12} {r.S_w:>14.6e} {r.main:>14.6e} {r.ratio:>9.5f}")


def _emit_rows(args, rows) -> None:
    text = harness.rows_to_json(rows) if args.format == "json" else harness.rows_to_csv(rows)
    _emit(args, text)


def cmd_theorem_scan(args) -> int:
    rows = harness.theorem_scan(args.Xs, args.shape, workers=args.threads)
    _print_rows(rows)
    _emit_rows(args, rows)
    return 0


def cmd_corollary_scan(args) -> int:
    rows = harness.corollary_scan(args.D, args.Xs, workers=args.threads)
    _print_rows(rows)
    _emit_rows(args, rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matcount",
        description="Smoothed counts of 2x2 integer matrices with fixed trace and determinant.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write machine-readable output to this file")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--threads", type=_positive_int, default=1, help="worker processes (speed only)")

    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("count", cmd_count, "sharp count S(X) in the box [-X, X]^4")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--X", type=int, required=True)

    p = add("smooth-count", cmd_smooth_count, "smoothed count S_w(X)")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--X", type=_number, required=True)
    p.add_argument("--method", choices=("congruence", "both"), default="both")

    p = add("gamma", cmd_gamma, "gamma_D(1) = K(1) M(1) / zeta(2)")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-8)

    p = add("main-term", cmd_main_term, "main-term integral M(X, D)")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--X", type=_number, required=True)
    p.add_argument("--tol", type=float, default=1e-8)

    p = add("rho-scan", cmd_rho_scan, "partial sums of rho(k) against y * gamma_D(1)")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--ys", type=_float_list, default=[10**3, 10**4, 10**5, 10**6])

    p = add("weyl", cmd_weyl, "Weyl sums over quadratic roots")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--q", type=_positive_int, default=1)
    p.add_argument("--Y", type=float, default=100.0)
    p.add_argument("--c", type=_positive_int, default=None, help="single modulus instead of the smooth average")

    p = add("poisson", cmd_poisson, "Poisson summation over a residue class")
    p.add_argument("--profile", choices=("gaussian", "bump"), default="gaussian")
    p.add_argument("--alpha", type=int, default=0)
    p.add_argument("--q", type=_positive_int, default=1)
    p.add_argument("--trunc", type=_positive_int, default=40)
    p.add_argument("--scale", type=float, default=None, help="sigma (gaussian) or dilation X (bump)")

    p = add("theorem-scan", cmd_theorem_scan, "S_w(X) against gamma_D(1) M(X, D)")
    p.add_argument("--Xs", type=_float_list, required=True)
    p.add_argument("--shape", type=float, default=1.5)

    p = add("corollary-scan", cmd_corollary_scan, "restricted divisor sums against their main term")
    p.add_argument("--D", type=int, default=5)
    p.add_argument("--Xs", type=_float_list, required=True)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"matcount: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
