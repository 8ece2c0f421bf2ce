"""Command-line front end: one verb per library object.

Subcommands: sieve, indicator, count, weighted-count, singular-series,
expsum (eval | meansq | majorarc), vaughan-check, psi-check, verify, report.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
CSV output is RFC-style with a header row, 12 significant digits, LF line
endings; identical configuration and cache state yields byte-identical
output.  The JSON mirror (--out json) carries the same numeric content.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import analytic_lemmas, exp_sums, repr_counter
from . import verify as verify_mod
from .errors import CacheFormatError, ParameterError, ResourceError
from .ps_primes import (GammaParam, PrimeWindow, chi_indicator,
                        enumerate_ps_primes, load_table, ps_indicator,
                        save_table)
from .singular_series import DEFAULT_CUTOFF, singular_series


# ================================================================
# serialization (CSV with pinned precision; JSON mirror)
# ================================================================

def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        if math.isnan(v):
            return ""
        return format(v, ".12g")
    return str(v)


def _json_cell(v):
    if isinstance(v, float):
        if math.isnan(v):
            return None
        return float(format(v, ".12g"))
    return v


def emit(columns: list, rows: list, fmt: str) -> None:
    """Write dict rows to stdout.  Missing values: '' in CSV, null in JSON."""
    if fmt == "json":
        data = [{c: _json_cell(r[c]) for c in columns} for r in rows]
        sys.stdout.write(json.dumps(data, indent=2) + "\n")
        return
    lines = [",".join(columns)]
    lines.extend(",".join(_csv_cell(r[c]) for c in columns) for r in rows)
    sys.stdout.write("\n".join(lines) + "\n")


def _parse_alpha(text: str) -> Fraction:
    try:
        if "/" in text:
            return Fraction(text)
        return Fraction(float(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"bad alpha {text!r}: {exc}")


# ================================================================
# configuration checks
# ================================================================

def _check_common(args) -> None:
    if getattr(args, "workers", 1) < 1:
        raise ParameterError("--workers must be >= 1")
    if getattr(args, "precision_bits", 64) < 64:
        raise ParameterError("--precision-bits must be >= 64")


def _resolve_y(n: int, theta, y) -> int:
    """Window half-width: exactly one of theta / y."""
    if (theta is None) == (y is None):
        raise ParameterError("exactly one of --theta / --y is required")
    if y is not None:
        if y < 1:
            raise ParameterError(f"--y must be >= 1, got {y}")
        return y
    if not 0.0 < theta < 1.0:
        raise ParameterError(f"--theta must lie in (0, 1), got {theta}")
    return math.ceil(n ** theta)


def _require_n_range(args) -> tuple:
    if args.n_lo is None or args.n_hi is None:
        raise ParameterError("need --n, or both --n-lo and --n-hi")
    return args.n_lo, args.n_hi


def _cache_dir(args) -> Path:
    if getattr(args, "cache_dir", None):
        return Path(args.cache_dir)
    env = os.environ.get("PSGB_CACHE_DIR")
    return Path(env) if env else Path("psgb-cache")


def _cache_path(cdir: Path, gamma: GammaParam, lo: int, hi: int) -> Path:
    return cdir / f"ps_{gamma.a}_{gamma.b}_{lo}_{hi}.psgb"


# ================================================================
# subcommands
# ================================================================

def cmd_sieve(args) -> int:
    _check_common(args)
    if args.n_hi is None:
        raise ParameterError("sieve needs --n-hi (enumeration upper bound)")
    lo = 2 if args.n_lo is None else args.n_lo
    cdir = _cache_dir(args)
    cdir.mkdir(parents=True, exist_ok=True)
    path = _cache_path(cdir, args.gamma, lo, args.n_hi)
    t0 = time.perf_counter()
    table = None
    source = "sieve"
    if path.exists():
        try:
            cand = load_table(path)
            if (cand.gamma, cand.lo, cand.hi) == (args.gamma, lo, args.n_hi):
                table, source = cand, "cache"
            else:
                print(f"cache {path} holds different parameters; re-sieving",
                      file=sys.stderr)
        except CacheFormatError as exc:
            print(f"cache {path} unreadable ({exc}); re-sieving", file=sys.stderr)
    if table is None:
        table = enumerate_ps_primes(lo, args.n_hi, args.gamma)
        save_table(table, path)
    dt = time.perf_counter() - t0
    print(f"{len(table)} ps-primes gamma={args.gamma} range=[{lo},{args.n_hi}] "
          f"via {source} in {dt:.3f}s -> {path}")
    return 0


def cmd_indicator(args) -> int:
    _check_common(args)
    if args.n is not None:
        ns = [args.n]
    else:
        lo, hi = _require_n_range(args)
        if hi < lo:
            raise ParameterError(f"need --n-lo <= --n-hi, got [{lo}, {hi}]")
        ns = range(lo, hi + 1)
    rows = [{"n": n, "member": ps_indicator(n, args.gamma),
             "chi": chi_indicator(n, args.gamma)} for n in ns]
    emit(["n", "member", "chi"], rows, args.out)
    return 0


def _scan_row_dict(r: repr_counter.ScanRow) -> dict:
    return {"n": r.n, "y": r.y, "count": r.count, "weighted": r.weighted,
            "predicted": r.predicted, "ratio": r.ratio, "flags": r.flags}


def cmd_count(args) -> int:
    _check_common(args)
    cols = ["n", "y", "count", "weighted", "predicted", "ratio", "flags"]
    if args.n is not None:
        y = _resolve_y(args.n, args.theta, args.y)
        rep = repr_counter.count_reps(args.n, y, args.gamma,
                                      collect_witnesses=args.witnesses,
                                      cutoff=args.cutoff)
        ratio = rep.weighted / rep.predicted if rep.predicted > 0 else float("nan")
        row = {"n": args.n, "y": y, "count": rep.count, "weighted": rep.weighted,
               "predicted": rep.predicted, "ratio": ratio,
               "flags": ";".join(rep.flags)}
        if args.witnesses:
            row["witnesses"] = ";".join(
                "+".join(str(p) for p in t) for t in (rep.witnesses or ()))
            cols = cols + ["witnesses"]
        emit(cols, [row], args.out)
        return 0
    lo, hi = _require_n_range(args)
    if args.theta is not None and args.y is not None:
        raise ParameterError("exactly one of --theta / --y is required")
    if args.theta is not None:
        rows = repr_counter.theorem_scan(lo, hi, args.gamma, args.theta,
                                         samples=args.samples,
                                         workers=args.workers,
                                         cutoff=args.cutoff)
        emit(cols, [_scan_row_dict(r) for r in rows], args.out)
        return 0
    if args.y is None:
        raise ParameterError("exactly one of --theta / --y is required")
    dicts = []
    for n in repr_counter.scan_targets(lo, hi, args.samples):
        rep = repr_counter.count_reps(n, args.y, args.gamma, cutoff=args.cutoff)
        ratio = rep.weighted / rep.predicted if rep.predicted > 0 else float("nan")
        dicts.append({"n": n, "y": args.y, "count": rep.count,
                      "weighted": rep.weighted, "predicted": rep.predicted,
                      "ratio": ratio, "flags": ";".join(rep.flags)})
    emit(cols, dicts, args.out)
    return 0


def _weighted_row(n: int, y: int, gamma: GammaParam, cutoff: int) -> dict:
    w = repr_counter.weighted_count(n, y, gamma)
    pred = singular_series(n, cutoff).value * 3.0 * y * y / math.log(n) ** 3
    ratio = w / pred if pred > 0 else float("nan")
    flags = []
    if n % 2 == 0:
        flags.append("even-n")
    if w == 0.0:
        flags.append("zero-count")
    return {"n": n, "y": y, "weighted": w, "predicted": pred, "ratio": ratio,
            "flags": ";".join(flags)}


def cmd_weighted_count(args) -> int:
    _check_common(args)
    cols = ["n", "y", "weighted", "predicted", "ratio", "flags"]
    if args.n is not None:
        y = _resolve_y(args.n, args.theta, args.y)
        emit(cols, [_weighted_row(args.n, y, args.gamma, args.cutoff)], args.out)
        return 0
    lo, hi = _require_n_range(args)
    rows = []
    for n in repr_counter.scan_targets(lo, hi, args.samples):
        y = _resolve_y(n, args.theta, args.y)
        rows.append(_weighted_row(n, y, args.gamma, args.cutoff))
    emit(cols, rows, args.out)
    return 0


def cmd_singular_series(args) -> int:
    _check_common(args)
    if args.n is not None:
        ns = [args.n]
    else:
        lo, hi = _require_n_range(args)
        ns = range(lo, hi + 1)
    rows = []
    for n in ns:
        s = singular_series(n, args.cutoff)
        rows.append({"n": n, "cutoff": s.cutoff, "value": s.value,
                     "tail_bound": s.tail_bound})
    emit(["n", "cutoff", "value", "tail_bound"], rows, args.out)
    return 0


def cmd_expsum(args) -> int:
    _check_common(args)
    if args.n is None:
        raise ParameterError("expsum needs --n")
    y = _resolve_y(args.n, args.theta, args.y)
    window = PrimeWindow(args.n, y)
    if args.mode == "eval":
        alpha = _parse_alpha(args.alpha)
        if args.kind == "g":
            val = exp_sums.eval_g(alpha, window)
        else:
            val = exp_sums.eval_f(alpha, window, args.gamma)
        row = {"kind": val.kind, "alpha_num": val.alpha.numerator,
               "alpha_den": val.alpha.denominator, "re": val.re, "im": val.im,
               "abs": abs(val.value)}
        emit(["kind", "alpha_num", "alpha_den", "re", "im", "abs"], [row], args.out)
        return 0
    if args.mode == "meansq":
        samples = args.samples
        if samples is None:
            samples = (2 * args.n + 6 * y) // 3 + 1
        gamma = args.gamma if args.kind == "f" else None
        exact = exp_sums.mean_square(args.kind, window, gamma)
        quad = exp_sums.mean_square_quadrature(args.kind, window, gamma, samples)
        row = {"kind": args.kind, "n": args.n, "y": y, "samples": samples,
               "exact": exact, "quadrature": quad, "abs_diff": abs(quad - exact)}
        emit(["kind", "n", "y", "samples", "exact", "quadrature", "abs_diff"],
             [row], args.out)
        return 0
    q_max = args.q_max if args.q_max is not None else max(2, int(math.log(args.n)))
    rows = exp_sums.major_arc_diff_scan(window, args.gamma, q_max)
    dicts = [{"alpha_num": r.a, "alpha_den": r.q, "D": r.diff, "ratio": r.ratio}
             for r in rows]
    emit(["alpha_num", "alpha_den", "D", "ratio"], dicts, args.out)
    return 0


def cmd_vaughan_check(args) -> int:
    _check_common(args)
    params = analytic_lemmas.VaughanParams(args.u, args.v)
    worst = analytic_lemmas.vaughan_verify(args.n_max, params)
    ok = worst < 1e-8
    emit(["n_max", "u", "v", "max_residual", "passed"],
         [{"n_max": args.n_max, "u": float(args.u), "v": float(args.v),
           "max_residual": worst, "passed": int(ok)}], args.out)
    return 0 if ok else 1


def cmd_psi_check(args) -> int:
    _check_common(args)
    try:
        h_list = [int(t) for t in args.h_values.split(",") if t]
    except ValueError as exc:
        raise ParameterError(f"bad --h-values: {exc}")
    if not h_list:
        raise ParameterError("--h-values must name at least one H")
    if args.grid < 2:
        raise ParameterError("--grid must be >= 2")
    x = np.arange(args.grid, dtype=np.float64) / args.grid
    rows = []
    all_ok = True
    for H in h_list:
        params = analytic_lemmas.build_psi_approx(H)
        excess = float((np.abs(params.error_eval(x)) - params.majorant_eval(x)).max())
        ca = max(abs(params.a[h]) * abs(h) for h in params.a)
        cb = max(params.b[h] * (H + 1) for h in params.b)
        coeff_ok = (ca <= analytic_lemmas.PSI_COEFF_BOUND + 1e-15
                    and cb <= analytic_lemmas.PSI_MAJORANT_BOUND + 1e-15)
        ok = excess <= 1e-9 and coeff_ok
        all_ok = all_ok and ok
        rows.append({"H": H, "grid": args.grid, "excess": excess,
                     "coeff_ok": int(coeff_ok), "passed": int(ok)})
    emit(["H", "grid", "excess", "coeff_ok", "passed"], rows, args.out)
    return 0 if all_ok else 1


def cmd_verify(args) -> int:
    _check_common(args)
    gamma = args.gamma if args.gamma is not None else GammaParam(2, 3)
    hook = verify_mod.flip_table_entry if args.inject_fault else None
    results = verify_mod.run_verify(gamma, fault_hook=hook)
    rows = [{"suite": r.name, "residual": r.residual, "tolerance": r.tolerance,
             "passed": int(r.passed)} for r in results]
    emit(["suite", "residual", "tolerance", "passed"], rows, args.out)
    return 0 if all(r.passed for r in results) else 1


def _report_one(packed) -> dict:
    n, a, b, theta, y_fixed, q_max, cutoff = packed
    gamma = GammaParam(a, b)
    y = y_fixed if y_fixed is not None else math.ceil(n ** theta)
    rep = repr_counter.count_reps(n, y, gamma, cutoff=cutoff)
    ratio = rep.weighted / rep.predicted if rep.predicted > 0 else float("nan")
    qm = q_max if q_max is not None else max(2, int(math.log(n)))
    arcs = exp_sums.major_arc_diff_scan(PrimeWindow(n, y), gamma, qm)
    mar = max((r.ratio for r in arcs), default=float("nan"))
    return {"n": n, "y": y, "count": rep.count, "weighted": rep.weighted,
            "predicted": rep.predicted, "ratio": ratio,
            "max_major_arc_ratio": mar, "flags": ";".join(rep.flags)}


def cmd_report(args) -> int:
    """theorem_scan rows joined with the per-n major-arc max ratio."""
    _check_common(args)
    if (args.theta is None) == (args.y is None):
        raise ParameterError("exactly one of --theta / --y is required")
    if args.theta is not None and not 0.0 < args.theta < 1.0:
        raise ParameterError(f"--theta must lie in (0, 1), got {args.theta}")
    if args.n is not None:
        targets = [args.n]
    else:
        lo, hi = _require_n_range(args)
        targets = repr_counter.scan_targets(lo, hi, args.samples)
    packed = [(n, args.gamma.a, args.gamma.b, args.theta, args.y, args.q_max,
               args.cutoff) for n in targets]
    if args.workers > 1 and len(packed) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_report_one, packed))
    else:
        rows = [_report_one(p) for p in packed]
    emit(["n", "y", "count", "weighted", "predicted", "ratio",
          "max_major_arc_ratio", "flags"], rows, args.out)
    return 0


# ================================================================
# parser
# ================================================================

def _add_common(p: argparse.ArgumentParser, *names) -> None:
    if "gamma" in names:
        p.add_argument("--gamma", type=GammaParam.parse, metavar="A/B",
                       required=True, help="exponent gamma as a fraction a/b in (0,1)")
    if "gamma-opt" in names:
        p.add_argument("--gamma", type=GammaParam.parse, metavar="A/B",
                       default=None, help="exponent gamma (default 2/3)")
    if "n" in names:
        p.add_argument("--n", type=int, default=None, help="single target n")
    if "range" in names:
        p.add_argument("--n-lo", type=int, default=None, help="range start")
        p.add_argument("--n-hi", type=int, default=None, help="range end (inclusive)")
    if "window" in names:
        p.add_argument("--y", type=int, default=None, help="window half-width")
        p.add_argument("--theta", type=float, default=None,
                       help="window exponent: y = ceil(n^theta)")
    if "samples" in names:
        p.add_argument("--samples", type=int, default=None,
                       help="log-spaced sample count over the n range")
    if "cutoff" in names:
        p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF,
                       help="singular-series prime cutoff P")
    if "q-max" in names:
        p.add_argument("--q-max", type=int, default=None,
                       help="largest denominator q (default: floor(log n))")
    p.add_argument("--out", choices=("csv", "json"), default="csv",
                   help="output format")
    p.add_argument("--cache-dir", default=None,
                   help="cache directory (default: $PSGB_CACHE_DIR or ./psgb-cache)")
    p.add_argument("--workers", type=int, default=1, help="process count for scans")
    p.add_argument("--precision-bits", type=int, default=64,
                   help="fixed-point bits for exact weight evaluation (>= 64)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psgb",
        description="Piatetski-Shapiro Goldbach windows: sieve, count, verify.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="enumerate PS primes and write the cache file")
    _add_common(p, "gamma", "range")
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("indicator", help="exact PS membership indicator (both routes)")
    _add_common(p, "gamma", "n", "range")
    p.set_defaults(func=cmd_indicator)

    p = sub.add_parser("count", help="exact representation counts over a window")
    _add_common(p, "gamma", "n", "range", "window", "samples", "cutoff")
    p.add_argument("--witnesses", action="store_true",
                   help="list witness triples (single --n only)")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("weighted-count", help="weighted representation sum only")
    _add_common(p, "gamma", "n", "range", "window", "samples", "cutoff")
    p.set_defaults(func=cmd_weighted_count)

    p = sub.add_parser("singular-series", help="local-density product and tail bound")
    _add_common(p, "n", "range", "cutoff")
    p.set_defaults(func=cmd_singular_series)

    p = sub.add_parser("expsum", help="exponential sums f and g over a window")
    p.add_argument("mode", choices=("eval", "meansq", "majorarc"))
    _add_common(p, "gamma", "n", "window", "q-max")
    p.add_argument("--kind", choices=("f", "g"), default="f",
                   help="weighted PS sum f or unit prime sum g")
    p.add_argument("--alpha", default="0", help="phase alpha (float or a/b)")
    p.add_argument("--samples", type=int, default=None,
                   help="quadrature sample count (meansq)")
    p.set_defaults(func=cmd_expsum)

    p = sub.add_parser("vaughan-check", help="identity residual over n <= n-max")
    p.add_argument("--n-max", type=int, default=2000)
    p.add_argument("--u", type=float, default=13.0)
    p.add_argument("--v", type=float, default=13.0)
    _add_common(p)
    p.set_defaults(func=cmd_vaughan_check)

    p = sub.add_parser("psi-check", help="sawtooth approximation majorant check")
    p.add_argument("--h-values", default="4,16,64", metavar="H1,H2,...")
    p.add_argument("--grid", type=int, default=100001, help="grid point count")
    _add_common(p)
    p.set_defaults(func=cmd_psi_check)

    p = sub.add_parser("verify", help="run the five invariant suites")
    _add_common(p, "gamma-opt")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="count rows joined with major-arc ratios")
    _add_common(p, "gamma", "n", "range", "window", "samples", "cutoff", "q-max")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CacheFormatError as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return 3
    except (OSError, ResourceError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
