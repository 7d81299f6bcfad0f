#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-python fallback.

Runs each hot kernel on a scaled-down workload with both backends and
prints a table of timings; the workloads are shaped like the real
experiments (character-sum sweeps, L-value scans, Pell censuses).

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import math
import time

import quadclass._kernels_py as pure
import quadclass.lfun as lfun
import quadclass.primes as primes

try:
    import quadclass._kernels as compiled
except ImportError:
    compiled = None


def timed(fn, repeat):
    best = math.inf
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def workloads():
    odd_primes = primes.primes_upto(500)[1:]
    lpf_1e5 = primes.shared_lpf(10**5 + 1)
    zprimes = primes.primes_upto(10**4)
    d_big = 999999999989 * 4 + 1  # 62-bit-safe discriminant-sized operand
    d_l = 99989  # fundamental: 99989 = 1 mod 4, squarefree
    chi_l = None
    ds_census = lfun.fundamental_discriminants(10**4)
    census_primes = primes.primes_upto(190)

    def bench_jacobsthal(mod):
        return mod.jacobsthal_scan(odd_primes)

    def bench_complete_sum(mod):
        return sum(mod.complete_sum_direct(q) for q in range(1, 2002, 2))

    def bench_chi_table(mod):
        return int(mod.kronecker_table(d_l, d_l, lpf_1e5)[-1])

    def bench_logsine(mod):
        chi = mod.kronecker_table(d_l, d_l, lpf_1e5)
        return mod.logsine_value(d_l, chi)

    def bench_smoothed(mod):
        nmax = int(3.1 * math.isqrt(d_l)) + 5
        chi = mod.kronecker_table(d_l, nmax + 1, lpf_1e5)
        return mod.smoothed_value(d_l, chi, nmax)

    def bench_census(mod):
        return mod.census_scan(ds_census, lpf_1e5, census_primes, 3.1, math.inf)[0]

    def bench_euler_tail(mod):
        return mod.euler_and_tail(d_big, zprimes, 13.0)

    def bench_pell(mod):
        return mod.pell_census_count(2, 20001, 1.0)

    return [
        ("jacobsthal scan, odd p <= 500", bench_jacobsthal),
        ("complete sums, odd q <= 2001", bench_complete_sum),
        ("chi table, d = 99989", bench_chi_table),
        ("log-sine L(1), d = 99989", bench_logsine),
        ("smoothed L(1), d = 99989", bench_smoothed),
        ("L census, fundamental d < 1e4", bench_census),
        ("euler+tail, d ~ 4e12, p <= 1e4", bench_euler_tail),
        ("pell census count, d <= 2e4", bench_pell),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if compiled is None:
        print("compiled extension not available; showing pure backend only")
    header = f"{'workload':34} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, fn in workloads():
        t_pure, r_pure = timed(lambda: fn(pure), args.repeat)
        if compiled is not None:
            t_comp, r_comp = timed(lambda: fn(compiled), args.repeat)
            match = "" if r_pure == r_comp else "   RESULTS DIFFER"
            print(
                f"{name:34} {t_pure:10.4f} {t_comp:13.4f} "
                f"{t_pure / t_comp:7.1f}x{match}"
            )
        else:
            print(f"{name:34} {t_pure:10.4f} {'-':>13} {'-':>8}")


if __name__ == "__main__":
    main()
