"""Built-in identity and oracle-agreement checks behind the ``selftest``
CLI subcommand.  Each check returns (name, passed, detail); all of them
together exercise the fixed examples and cross-route agreements at desk
scale."""

import math
from fractions import Fraction

import numpy as np

from . import arith, family, forms, kernels, lfun, moments, pell, primes


def _pell_naive(d, theta):
    """Independent census oracle: loop over m instead of n."""
    if theta == 1.0:
        mmax = d
    else:
        mmax = int(float(d) ** theta)
    sols = []
    for m in range(1, mmax + 1):
        for sign in (1, -1):
            v = m * m - 4 * sign
            if v >= d and v % d == 0:
                n2 = v // d
                n = math.isqrt(n2)
                if n * n == n2 and n >= 1:
                    sols.append((m, n, sign))
    sols.sort()
    return sols


def _ell_naive(q):
    return sum(1 for m in range(q) if (m * m - 4) % q == 0)


def run_checks(dmax=10**4, threads=1):
    """Run every check; yields (name, passed, detail)."""
    checks = []

    def add(name, passed, detail=""):
        checks.append((name, bool(passed), detail))

    # --- symbol examples and laws
    add(
        "kronecker-examples",
        kernels.kronecker(5, 5) == 0
        and kernels.kronecker(5, 2) == -1
        and kernels.kronecker(17, 2) == 1,
    )
    lpf = primes.shared_lpf(3700)
    ok = True
    for d in list(range(-60, 61)):
        chi = kernels.kronecker_table(d, 3601, lpf)
        t = chi[:61]
        if not np.array_equal(np.outer(t, t)[1:, 1:], _prod_table(chi, 60)):
            ok = False
            break
    add("kronecker-multiplicative", ok)
    ok = True
    for d in (5, 17, 37):
        chi = kernels.kronecker_table(d, 10 * d + 1, lpf)
        for m in range(1, 10 * d + 1):
            if chi[m] != chi[m % d] and m % d != 0:
                ok = False
    add("kronecker-periodic-mod-d", ok)

    # --- complete character sums
    ok = arith.complete_sum_f(5) == -1 and arith.complete_sum_f(9) == 9
    bound_ok, crt_ok = True, True
    for q in range(1, 2001, 2):
        s = arith.complete_sum_f(q)
        q0 = arith.squarefree_decompose(q).squarefree_part
        if abs(s) * q0 > q:
            bound_ok = False
        if q <= 500 and s != arith.complete_sum_f(q, method="crt"):
            crt_ok = False
    add("complete-sum-examples", ok)
    add("complete-sum-bound-q2000", bound_ok)
    add("complete-sum-crt-q500", crt_ok)

    pairs, violations = kernels.jacobsthal_scan(primes.primes_upto(200)[1:])
    add("jacobsthal-p200", not violations, f"{pairs} pairs")

    ok = True
    for q in range(1, 201, 2):
        c = arith.complete_sum_f(q)
        for k in range(1, 6):
            if arith.charsum_partial(q, k * q) != k * c:
                ok = False
    add("charsum-periodicity", ok)

    # --- continued fractions, units, Pell censuses
    cf13 = pell.cf_sqrt(13)
    add(
        "cf-examples",
        pell.cf_sqrt(2).period == (2,)
        and pell.cf_sqrt(5).period == (4,)
        and cf13.a0 == 3
        and cf13.period == (1, 1, 1, 1, 6),
    )
    u5, u8, u17 = pell.fundamental_unit(5), pell.fundamental_unit(8), pell.fundamental_unit(17)
    add(
        "unit-examples",
        (u5.a, u5.b, u5.norm_sign) == (1, 1, -1)
        and (u8.a, u8.b, u8.norm_sign) == (2, 1, -1)
        and (u17.a, u17.b, u17.norm_sign) == (8, 2, -1)
        and abs(u5.regulator - 0.4812118250596035) < 1e-12
        and abs(u17.regulator - 2.0947125472611012) < 1e-12,
    )
    sf = family.squarefree_mask(300)
    add(
        "family-units",
        all(family.verify_family_unit(n) for n in range(2, 301) if sf[n]),
    )
    c5 = pell.pell_census(5, 1.0)
    add(
        "pell-census-examples",
        c5.solutions == ((1, 1, -1), (3, 1, 1), (4, 2, -1))
        and pell.pell_census(2, 1.0).solutions == ((2, 2, -1),),
    )
    ok = True
    for d in range(2, 61):
        for theta in (0.6, 1.0, 1.4):
            if list(pell.pell_census(d, theta).solutions) != _pell_naive(d, theta):
                ok = False
    add("pell-census-vs-naive", ok)
    ok = all(pell.ell(q) == _ell_naive(q) for q in range(1, 201))
    for q1 in range(1, 41):
        for q2 in range(1, 41):
            if math.gcd(q1, q2) == 1 and pell.ell(q1 * q2) != pell.ell(q1) * pell.ell(q2):
                ok = False
    add("ell-multiplicative", ok)

    # --- L-values and class numbers
    ok = True
    for d in (5, 8, 17, 40, 65, 76, 101):
        a = lfun.l_exact(d, method="logsine")
        b = lfun.l_exact(d, method="smoothed")
        if abs(a / b - 1.0) > 1e-10:
            ok = False
    add("l-value-routes-agree", ok)
    add(
        "l-value-examples",
        abs(lfun.l_exact(5) - 0.4304089409640040) < 1e-10
        and abs(lfun.l_exact(8) - 0.6232252401402305) < 1e-10,
    )
    add(
        "euler-convergence-d5",
        abs(lfun.euler_truncated(5, 10**4) / lfun.l_exact(5) - 1.0) < 0.01,
    )
    gap = 0.0
    ok = True
    for d in lfun.fundamental_discriminants(dmax + 1):
        try:
            rec = forms.class_number(int(d))
        except Exception:
            ok = False
            break
        gap = max(gap, abs(rec.h_analytic - rec.h))
    add("classnum-cross-validation", ok and gap < 1e-4, f"dmax={dmax} max_gap={gap:.2e}")
    add(
        "extremal-statistic-d5",
        abs(forms.extremal_statistic(5) - 1.5124) < 1e-3,
    )

    # --- family density and splitting
    sf2 = family.squarefree_mask(3000)
    ok = all(
        bool(sf2[n]) == arith.is_squarefree(4 * n * n + 1) for n in range(1, 3001)
    )
    add("family-sieve-vs-factorization", ok, "n <= 3000")
    add(
        "family-root-counts",
        _root_count(25) == 2 and _root_count(9) == 0,
    )
    try:
        mem = family.construct_splitting(10**8, 3.0)
        ok = len(mem) > 0
    except Exception:
        ok = False
    add("splitting-construction", ok)

    # --- moments machinery
    ok = True
    for m, om in moments.support_integers(2000, 2.0, 50.0, 6):
        b = moments.b_coefficient(m, om, 2.0, 50.0)
        if not 0 <= b <= math.factorial(om):
            ok = False
    add("b-coefficient-caps", ok)
    okc, cex = moments.comb_inequality_check(500, 2.0, 30.0, 3, 3)
    add("comb-inequality", okc, f"{len(cex)} counterexamples")
    lhs, rhs, okp = moments.prime_square_identity_check(2.0, 100.0, 3)
    add("prime-square-identity", okp, f"lhs={lhs:.15g}")
    rep = moments.moment_empirical(100, 2.0, 10.0, 1)
    expected = float(
        Fraction(100, 441) + Fraction(5041, 11025) + Fraction(841, 11025) + Fraction(16, 441)
    )
    add("moment-hand-example", abs(rep.empirical - expected) < 1e-12)
    rows = moments.charsum_bound_census(99)
    add(
        "charsum-census-bounded",
        max(r.max_ratio for r in rows) <= 2.0,
        f"max={max(r.max_ratio for r in rows):.6f}",
    )

    # --- determinism of a parallel reduction
    agg1 = pell.pell_census_aggregate(1000, 1.0, threads=1)
    agg4 = pell.pell_census_aggregate(1000, 1.0, threads=4)
    add("pell-aggregate-thread-independent", agg1 == agg4, f"total={agg1.total}")

    return checks


def _prod_table(chi, top):
    out = np.empty((top, top), dtype=np.int8)
    for i in range(1, top + 1):
        for j in range(1, top + 1):
            out[i - 1, j - 1] = chi[i * j]
    return out


def _root_count(p2):
    return sum(1 for n in range(p2) if (4 * n * n + 1) % p2 == 0)
