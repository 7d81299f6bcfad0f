"""Command-line driver.

Each experiment is a subcommand writing a CSV or JSON report to --out
('-' for stdout).  Identical configuration (including --seed and
--threads) produces byte-identical reports; worker counts never change
numeric results.

Exit codes: 0 success, 1 internal consistency failure or unwritable
output, 2 usage error.
"""

import argparse
import math
import sys

from . import family, forms, lfun, moments, parallel, pell, report, selftest
from .errors import ConsistencyError


def _count(text):
    """Integer argument accepting scientific notation ('1e8')."""
    v = float(text)
    i = int(v)
    if i != v:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return i


def build_parser():
    top = argparse.ArgumentParser(
        prog="quadclass",
        description="Experiments on class numbers and L(1, chi) of real "
        "quadratic fields",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default="-", help="output path, '-' for stdout")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument(
            "--threads",
            type=int,
            default=None,
            help="worker threads (default: QUADCLASS_THREADS or 1)",
        )
        return p

    p = common(sub.add_parser("family", help="enumerate squarefree d = 4n^2+1"))
    p.add_argument("--x", type=_count, required=True)
    p.add_argument("--q", type=_count, default=1, help="require q | n")

    p = common(sub.add_parser("density", help="family count vs main term"))
    p.add_argument("--x", type=_count, required=True)
    p.add_argument("--q", type=_count, default=1)

    p = common(sub.add_parser("splitting", help="members splitting at all p <= y"))
    p.add_argument("--x", type=_count, required=True)
    p.add_argument("--y", type=float, required=True)

    p = common(sub.add_parser("extremes", help="extreme class number search"))
    p.add_argument("--x", type=_count, required=True)
    p.add_argument("--y", type=float, default=None)
    p.add_argument("--z", type=float, default=None)
    p.add_argument("--sample", type=_count, default=0, help="baseline sample size")
    p.add_argument("--seed", type=_count, default=20260810)

    p = common(sub.add_parser("lfun-census", help="Euler-product approximation census"))
    p.add_argument("--x", type=_count, required=True)
    p.add_argument("--A", type=float, default=2.0)
    p.add_argument("--c0", type=float, default=5.0, help="tol = c0/loglog x")
    p.add_argument("--tol", type=float, default=None, help="override tolerance")
    p.add_argument("--method", choices=("smoothed", "logsine"), default="smoothed")

    p = common(sub.add_parser("pell-census", help="small Pell solution census"))
    p.add_argument("--x", type=_count, default=None, help="aggregate over d <= x")
    p.add_argument("--d", type=_count, default=None, help="single-d census")
    p.add_argument("--theta", type=float, default=1.0)
    p.add_argument("--fundamental-only", action="store_true")

    p = common(sub.add_parser("moments", help="2k-th moments of tail prime sums"))
    p.add_argument("--x", type=_count, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--k", default="1", help="k or comma list, e.g. 1,2,3")
    p.add_argument("--mode", choices=("family", "all_n"), default="family")

    p = common(sub.add_parser("charsum-census", help="character-sum bound census"))
    p.add_argument("--q-max", type=_count, default=499)
    p.add_argument("--samples", type=_count, default=8)

    p = common(sub.add_parser("sieve-ratio", help="quadratic large sieve explorer"))
    p.add_argument("--x", type=_count, default=2000)
    p.add_argument("--N", type=_count, default=2000)
    p.add_argument("--trials", type=_count, default=8)
    p.add_argument("--seed", type=_count, default=20260810)

    p = common(sub.add_parser("classnum", help="class numbers by two routes"))
    p.add_argument("--d", type=_count, default=None)
    p.add_argument("--dmin", type=_count, default=5)
    p.add_argument("--dmax", type=_count, default=None)

    p = common(sub.add_parser("selftest", help="run the built-in check suite"))
    p.add_argument("--dmax", type=_count, default=10**4)

    return top


def _config_dict(args):
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("out",)}
    cfg["threads"] = args.threads if args.threads is not None else parallel.default_threads()
    return cfg


def _emit(args, header, rows, summary):
    cfg = _config_dict(args)
    report.write_report(args.out, args.format, cfg, header, rows, summary)
    return 0


def _run_family(args):
    rows = [(m.n, m.d) for m in family.enumerate_family(args.x, args.q)]
    return _emit(args, ("n", "d"), rows, {"count": len(rows)})


def _run_density(args):
    r = family.density_check(args.x, args.q)
    rows = [(r.q, r.count, r.main_term_local, r.main_term_literal, r.rel_error)]
    summary = {"sqrt_x_over_2q": math.sqrt(args.x) / (2 * args.q)}
    return _emit(
        args,
        ("q", "count", "main_term_local", "main_term_literal", "rel_error"),
        rows,
        summary,
    )


def _run_splitting(args):
    members = family.construct_splitting(args.x, args.y)
    rows = [(m.n, m.d) for m in members]
    q = family.splitting_modulus(args.y)
    return _emit(args, ("n", "d"), rows, {"count": len(rows), "modulus": q})


def _run_extremes(args):
    rep = family.extreme_search(args.x, args.y, args.z, threads=args.threads or 1)
    rows = [
        (r.d, r.n, r.h, r.regulator, r.l_truncated, r.statistic) for r in rep.records
    ]
    summary = {
        "y": rep.y,
        "z": rep.z,
        "count": len(rows),
        "tail_threshold": rep.tail_threshold,
        "tail_exceed_count": rep.tail_exceed_count,
        "reference_constant": rep.reference_constant,
        "max_statistic": rows[0][5] if rows else 0.0,
    }
    if args.sample:
        sample = family.statistic_sample(
            args.x, args.sample, args.seed, rep.y, rep.z
        )
        stats = sorted(r.statistic for r in sample)
        median = stats[len(stats) // 2]
        summary["sample_size"] = args.sample
        summary["sample_median"] = median
        summary["max_over_median"] = (rows[0][5] / median) if rows else 0.0
    return _emit(
        args,
        ("d", "n", "h", "regulator", "L_trunc", "statistic"),
        rows,
        summary,
    )


def _run_lfun_census(args):
    rep = lfun.approximation_census(
        args.x,
        A=args.A,
        c0=args.c0,
        tol=args.tol,
        method=args.method,
        threads=args.threads or 1,
    )
    rows = [(d, ex, tr, rel) for d, ex, tr, rel in rep.exceptions]
    summary = {
        "z": rep.z,
        "tol": rep.tol,
        "fundamental_count": rep.fundamental_count,
        "exception_count": len(rows),
        "fraction": rep.fraction,
        "reference_fraction": rep.reference_fraction,
    }
    return _emit(args, ("d", "exact", "truncated", "rel_error"), rows, summary)


def _run_pell_census(args):
    if (args.d is None) == (args.x is None):
        raise ValueError("pell-census: give exactly one of --d or --x")
    if args.d is not None:
        census = pell.pell_census(args.d, args.theta)
        rows = [(m, n, s) for m, n, s in census.solutions]
        return _emit(
            args, ("m", "n", "sign"), rows, {"d": args.d, "count": len(rows)}
        )
    agg = pell.pell_census_aggregate(
        args.x,
        args.theta,
        fundamental_only=args.fundamental_only,
        threads=args.threads or 1,
    )
    rows = [(agg.x, agg.theta, agg.total, agg.bound_skeleton, agg.ratio)]
    return _emit(
        args,
        ("x", "theta", "total", "bound_skeleton", "ratio"),
        rows,
        {"fundamental_only": agg.fundamental_only},
    )


def _run_moments(args):
    ks = [int(part) for part in str(args.k).split(",") if part != ""]
    reports = moments.moment_grid(
        args.x, args.y, args.z, ks, mode=args.mode, threads=args.threads or 1
    )
    rows = [
        (r.k, r.empirical, r.skeleton, r.c_estimate, r.family_size, r.k_guard)
        for r in reports
    ]
    return _emit(
        args,
        ("k", "empirical", "skeleton", "c_estimate", "family_size", "k_guard"),
        rows,
        {"x": args.x, "y": args.y, "z": args.z, "mode": args.mode},
    )


def _run_charsum_census(args):
    rows = [
        (r.q, r.q0, r.complete_sum, r.period_ratio, r.max_ratio)
        for r in moments.charsum_bound_census(args.q_max, args.samples)
    ]
    mx = max((r[4] for r in rows), default=0.0)
    return _emit(
        args,
        ("q", "q0", "complete_sum", "period_ratio", "max_ratio"),
        rows,
        {"max_ratio": mx},
    )


def _run_sieve_ratio(args):
    rep = moments.large_sieve_ratio(args.x, args.N, args.trials, args.seed)
    rows = [(i, ratio) for i, ratio in enumerate(rep.ratios)]
    return _emit(
        args,
        ("trial", "ratio"),
        rows,
        {"max_ratio": rep.max_ratio, "mean_ratio": rep.mean_ratio},
    )


def _run_classnum(args):
    if args.d is not None:
        ds = [args.d]
    else:
        if args.dmax is None:
            raise ValueError("classnum: give --d or --dmax")
        ds = [int(v) for v in lfun.fundamental_discriminants(args.dmax + 1)]
        ds = [d for d in ds if d >= args.dmin]
    rows = []
    for d in ds:
        rec = forms.class_number(d)
        rows.append(
            (
                rec.d,
                rec.narrow_h,
                rec.h,
                rec.norm_sign,
                rec.h_analytic,
                2.0 * rec.h_analytic,  # the unhalved variant, for comparison
                rec.regulator,
            )
        )
    return _emit(
        args,
        ("d", "narrow_h", "h", "norm_sign", "h_analytic", "h_unhalved", "regulator"),
        rows,
        {"count": len(rows)},
    )


def _run_selftest(args):
    checks = selftest.run_checks(dmax=args.dmax, threads=args.threads or 1)
    rows = [(name, "PASS" if ok else "FAIL", detail) for name, ok, detail in checks]
    failed = [r for r in rows if r[1] == "FAIL"]
    _emit(
        args,
        ("check", "status", "detail"),
        rows,
        {"checks": len(rows), "failed": len(failed)},
    )
    return 1 if failed else 0


_RUNNERS = {
    "family": _run_family,
    "density": _run_density,
    "splitting": _run_splitting,
    "extremes": _run_extremes,
    "lfun-census": _run_lfun_census,
    "pell-census": _run_pell_census,
    "moments": _run_moments,
    "charsum-census": _run_charsum_census,
    "sieve-ratio": _run_sieve_ratio,
    "classnum": _run_classnum,
    "selftest": _run_selftest,
}


def run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return _RUNNERS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"consistency error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
