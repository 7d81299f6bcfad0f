"""Backend twin tests: the compiled kernels and the pure-python fallback
must agree exactly (bit-identically for floats)."""

import math

import gmpy2
import numpy as np
import pytest
import scipy.special
from hypothesis import given
from hypothesis import strategies as st

import quadclass._kernels_py as pure
import quadclass.primes as primes

compiled = pytest.importorskip("quadclass._kernels")


@given(st.integers(-(2**61), 2**61), st.integers(0, 2**40))
def test_jacobi_twins_and_oracle(a, n):
    n = 2 * n + 1
    assert compiled.jacobi(a % n, n) == pure.jacobi(a % n, n) == gmpy2.jacobi(a, n)


@given(st.integers(-(2**50), 2**50), st.integers(1, 2**50))
def test_kronecker_twins_and_oracle(d, m):
    assert compiled.kronecker(d, m) == pure.kronecker(d, m) == gmpy2.kronecker(d, m)


def test_kronecker_table_twins():
    lpf = primes.shared_lpf(4000)
    for d in (-163, -8, -3, 0, 1, 5, 17, 40, 65, 9999999937):
        a = compiled.kronecker_table(d, 4000, lpf)
        b = pure.kronecker_table(d, 4000, lpf)
        assert np.array_equal(a, b), d


def test_jacobsthal_twins():
    ps = primes.primes_upto(120)[1:]
    assert compiled.jacobsthal_scan(ps) == pure.jacobsthal_scan(ps)
    for p in (3, 7, 23):
        for b in range(p):
            assert compiled.jacobsthal_sum(p, b) == pure.jacobsthal_sum(p, b)


def test_symbol_period_twins():
    for q in (1, 3, 9, 45, 225, 1001):
        assert np.array_equal(compiled.f_symbol_period(q), pure.f_symbol_period(q))
        assert compiled.complete_sum_direct(q) == pure.complete_sum_direct(q)


def test_exp1_twins_bit_identical():
    xs = [1e-8, 1e-3, 0.1, 0.5, 0.999, 1.0, 1.001, 2.0, 5.0, 17.3, 80.0]
    for x in xs:
        assert compiled.exp1(x) == pure.exp1(x), x


def test_exp1_accuracy_vs_scipy():
    for x in np.geomspace(1e-6, 80.0, 200):
        x = float(x)
        ref = float(scipy.special.exp1(x))
        assert abs(compiled.exp1(x) - ref) <= 5e-14 * abs(ref), x


def test_l_value_kernels_bit_identical():
    lpf = primes.shared_lpf(10**4)
    for d in (5, 8, 17, 40, 65, 101, 104, 4001):
        chi = compiled.kronecker_table(d, d, lpf)
        assert compiled.logsine_value(d, chi) == pure.logsine_value(d, chi)
        nmax = int(3.1 * math.isqrt(d)) + 5
        chi2 = compiled.kronecker_table(d, nmax + 1, lpf)
        assert compiled.smoothed_value(d, chi2, nmax) == pure.smoothed_value(
            d, chi2, nmax
        )


def test_euler_and_tail_twins_bit_identical():
    zp = primes.primes_upto(1000)
    for d in (5, 17, 65, 101, 3601, 10**12 + 10**6 + 1):
        assert compiled.euler_product(d, zp) == pure.euler_product(d, zp)
        assert compiled.prime_tail_sum(d, zp) == pure.prime_tail_sum(d, zp)
        assert compiled.euler_and_tail(d, zp, 13.0) == pure.euler_and_tail(d, zp, 13.0)


def test_euler_and_tail_consistent_with_pieces():
    zp = primes.primes_upto(2000)
    for d in (5, 17, 65, 3601):
        f, s = compiled.euler_and_tail(d, zp, 50.0)
        assert f == compiled.euler_product(d, zp)
        assert s == compiled.prime_tail_sum(d, zp[zp > 50.0])


def test_census_scan_twins():
    import quadclass.lfun as lfun

    ds = lfun.fundamental_discriminants(2000)
    lpf = primes.shared_lpf(200)
    zp = primes.primes_upto(60)
    a = compiled.census_scan(ds, lpf, zp, 3.1, 0.05)
    b = pure.census_scan(ds, lpf, zp, 3.1, 0.05)
    assert a == b


def test_pell_count_twins():
    for lo, hi, theta in ((2, 400, 1.0), (2, 120, 0.6), (2, 120, 1.4)):
        assert compiled.pell_census_count(lo, hi, theta) == pure.pell_census_count(
            lo, hi, theta
        )
    mask = np.zeros(398, dtype=bool)
    mask[::3] = True
    assert compiled.pell_census_count_masked(
        2, 400, 1.0, mask
    ) == pure.pell_census_count_masked(2, 400, 1.0, mask)


def test_smoothed_matches_quad_precision():
    # mpmath reference at 30 digits for the smoothed representation
    from mpmath import mp

    mp.dps = 30
    lpf = primes.shared_lpf(200)
    for d in (5, 40, 65):
        nmax = int(3.1 * math.isqrt(d)) + 5
        chi = compiled.kronecker_table(d, 10 * d, lpf)
        ref = mp.mpf(0)
        for n in range(1, 10 * d):
            c = int(chi[n])
            if c:
                ref += c * (mp.erfc(n * mp.sqrt(mp.pi / d)) / n + mp.e1(mp.pi * n * n / d) / mp.sqrt(d))
        got = compiled.smoothed_value(d, chi, nmax)
        assert abs(got - float(ref)) < 1e-12
