# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.

Twin of ``_kernels_py``: same function names, signatures and semantics.
Float kernels replicate the fallback's operation order exactly so the
two backends give bit-identical results (built with -ffp-contract=off).
Integer arguments must fit in 62 bits; the wrappers in
``quadclass.kernels`` fall back to the pure implementation beyond that.
"""

import math

import numpy as np

from libc.math cimport erfc as c_erfc
from libc.math cimport exp as c_exp
from libc.math cimport fabs as c_fabs
from libc.math cimport log as c_log
from libc.math cimport pow as c_pow
from libc.math cimport sin as c_sin
from libc.math cimport sqrt as c_sqrt

ctypedef long long i64
ctypedef signed char i8

BACKEND = "compiled"

cdef double _EULER_GAMMA = 0.57721566490153286061
cdef double _PI = 3.14159265358979323846264338327950288


# ---------------------------------------------------------------- symbols

cdef inline i64 _jacobi_i64(i64 a, i64 n) nogil:
    # n odd positive, a >= 0
    cdef i64 r = 1
    cdef i64 t
    a = a % n
    while a:
        while a % 2 == 0:
            a >>= 1
            t = n % 8
            if t == 3 or t == 5:
                r = -r
        t = a
        a = n
        n = t
        if (a % 4 == 3) and (n % 4 == 3):
            r = -r
        a = a % n
    if n == 1:
        return r
    return 0


cdef inline i64 _kronecker_i64(i64 d, i64 m) nogil:
    cdef i64 r = 1
    cdef i64 d8
    while m % 2 == 0:
        if d % 2 == 0:
            return 0
        m >>= 1
        d8 = d % 8
        if d8 < 0:
            d8 += 8
        if d8 == 3 or d8 == 5:
            r = -r
    d8 = d % m
    if d8 < 0:
        d8 += m
    return r * _jacobi_i64(d8, m)


cdef inline i64 _isqrt64(i64 v) nogil:
    cdef i64 r
    if v < 0:
        return -1
    r = <i64>c_sqrt(<double>v)
    while r > 0 and r * r > v:
        r -= 1
    while (r + 1) * (r + 1) <= v:
        r += 1
    return r


def jacobi(a, n):
    """Jacobi symbol (a/n) for odd n >= 1 and a >= 0."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi: n must be a positive odd integer")
    return int(_jacobi_i64(a % n, n))


def kronecker(d, m):
    """Kronecker symbol (d/m) for m >= 1 and any integer d."""
    if m < 1:
        raise ValueError("kronecker: m must be >= 1")
    return int(_kronecker_i64(d, m))


cdef void _fill_chi(i64 d, Py_ssize_t limit, const int[:] spf, i8[:] chi) nogil:
    cdef Py_ssize_t a
    cdef int p
    if limit > 0:
        chi[0] = 0
    if limit > 1:
        chi[1] = 1
    for a in range(2, limit):
        p = spf[a]
        if p == a:
            chi[a] = <i8>_kronecker_i64(d, a)
        else:
            chi[a] = chi[p] * chi[a // p]


def kronecker_table(d, limit, spf):
    """Array chi with chi[a] = kronecker(d, a) for 1 <= a < limit."""
    cdef const int[:] spf_v = spf
    chi_arr = np.zeros(limit, dtype=np.int8)
    cdef i8[:] chi = chi_arr
    cdef i64 dd = d
    cdef Py_ssize_t lim = limit
    with nogil:
        _fill_chi(dd, lim, spf_v, chi)
    return chi_arr


# ------------------------------------------------ quadratic character sums

def jacobsthal_sum(p, b):
    """Exact value of sum_{n=1..p} ((n^2 + b)/p) for an odd prime p."""
    cdef i64 pp = p
    cdef i64 bb = b % pp
    cdef i64 s, n, idx, half
    chi_arr = _legendre_table(pp)
    cdef i8[:] chi = chi_arr
    half = (pp - 1) // 2
    with nogil:
        s = chi[bb]
        for n in range(1, half + 1):
            idx = (n * n + bb) % pp
            s += 2 * chi[idx]
    return int(s)


def _legendre_table(p):
    cdef i64 pp = p
    chi_arr = np.full(pp, -1, dtype=np.int8)
    cdef i8[:] chi = chi_arr
    cdef i64 t
    with nogil:
        chi[0] = 0
        for t in range(1, (pp - 1) // 2 + 1):
            chi[(t * t) % pp] = 1
    return chi_arr


def jacobsthal_scan(primes, max_violations=32):
    """Check sum_{n=1..p} ((n^2+b)/p) == -1 for every b in 1..p-1.

    Returns (pairs_checked, violations) with violations a list of
    (p, b, value) triples, empty on success (capped at max_violations).
    """
    primes_arr = np.ascontiguousarray(primes, dtype=np.int64)
    cdef i64[:] pv = primes_arr
    cdef Py_ssize_t np_count = pv.shape[0]
    cdef i64 pmax = 0
    cdef Py_ssize_t i
    for i in range(np_count):
        if pv[i] > pmax:
            pmax = pv[i]
    if pmax < 3:
        return 0, []
    chi_arr = np.empty(pmax, dtype=np.int8)
    nsq_arr = np.empty((pmax - 1) // 2 + 1, dtype=np.int64)
    cdef i8[:] chi = chi_arr
    cdef i64[:] nsq = nsq_arr
    cdef i64 pairs = 0
    cdef i64 p, half, t, b, s, idx, n, bad
    violations = []
    cdef Py_ssize_t cap = max_violations
    for i in range(np_count):
        p = pv[i]
        half = (p - 1) // 2
        bad = 0
        with nogil:
            for t in range(p):
                chi[t] = -1
            chi[0] = 0
            for t in range(1, half + 1):
                idx = (t * t) % p
                chi[idx] = 1
                nsq[t] = idx
            for b in range(1, p):
                s = chi[b]
                for n in range(1, half + 1):
                    idx = nsq[n] + b
                    if idx >= p:
                        idx -= p
                    s += 2 * chi[idx]
                pairs += 1
                if s != -1:
                    bad += 1
        if bad:
            # redo this prime slowly to collect the offending pairs
            for b in range(1, p):
                s = jacobsthal_sum(p, b)
                if s != -1 and len(violations) < cap:
                    violations.append((int(p), int(b), int(s)))
    return int(pairs), violations


def f_symbol_period(q):
    """Array s with s[a] = ((4a^2+1)/q) for 0 <= a <= q (Jacobi symbol)."""
    cdef i64 qq = q
    out_arr = np.zeros(qq + 1, dtype=np.int8)
    cdef i8[:] out = out_arr
    cdef i64 a, v
    with nogil:
        for a in range(qq + 1):
            v = (4 * a * a + 1) % qq
            out[a] = <i8>_jacobi_i64(v, qq)
    return out_arr


def complete_sum_direct(q):
    """sum_{a=1..q} ((4a^2+1)/q) by direct evaluation, q odd."""
    cdef i64 qq = q
    cdef i64 s = 0
    cdef i64 a, v
    with nogil:
        for a in range(1, qq + 1):
            v = (4 * a * a + 1) % qq
            s += _jacobi_i64(v, qq)
    return int(s)


# ------------------------------------------------------------- L-values

def logsine_value(d, chi):
    """L(1, chi_d) from the finite log-sine sum (folded, Kahan)."""
    cdef i64 dd = d
    cdef const i8[:] ch = chi
    cdef double s = 0.0, comp = 0.0, x, term, y, t
    cdef i64 a, half
    cdef int c
    half = (dd - 1) // 2
    with nogil:
        for a in range(1, half + 1):
            c = ch[a]
            if c:
                x = _PI * a
                x = x / dd
                term = c * c_log(c_sin(x))
                y = term - comp
                t = s + y
                comp = (t - s) - y
                s = t
    return -2.0 * s / c_sqrt(<double>dd)


cdef double _exp1(double x) nogil:
    cdef double s, p, b, c, dd, h, a, delta
    cdef int k, i
    if x < 1.0:
        s = 0.0
        p = 1.0
        for k in range(1, 64):
            p *= (-x) / k
            s -= p / k
            if c_fabs(p / k) < 1e-18 * (1.0 + c_fabs(s)):
                break
        return s - _EULER_GAMMA - c_log(x)
    b = x + 1.0
    c = 1e308
    dd = 1.0 / b
    h = dd
    for i in range(1, 200):
        a = -(<double>i) * i
        b += 2.0
        dd = 1.0 / (a * dd + b)
        c = b + a / c
        delta = c * dd
        h *= delta
        if c_fabs(delta - 1.0) < 1e-16:
            break
    return h * c_exp(-x)


def exp1(x):
    """Exponential integral E1(x) for x > 0."""
    if x <= 0.0:
        raise ValueError("exp1: x must be positive")
    return _exp1(x)


cdef double _smoothed_from_chi(i64 d, const i8[:] chi, i64 nmax) nogil:
    cdef double rpd, sqd, s, comp, a1, a2, term, y, t
    cdef i64 n
    cdef int c
    rpd = c_sqrt(_PI / d)
    sqd = c_sqrt(<double>d)
    s = 0.0
    comp = 0.0
    for n in range(1, nmax + 1):
        c = chi[n]
        if c:
            a1 = c_erfc(rpd * n) / n
            a2 = _exp1((_PI * (n * n)) / d) / sqd
            term = c * (a1 + a2)
            y = term - comp
            t = s + y
            comp = (t - s) - y
            s = t
    return s


def smoothed_value(d, chi, nmax):
    """L(1, chi_d) from the Gaussian-smoothed sum (exponentially convergent)."""
    cdef i64 dd = d
    cdef i64 nm = nmax
    cdef const i8[:] ch = chi
    cdef double out
    with nogil:
        out = _smoothed_from_chi(dd, ch, nm)
    return out


cdef double _euler_product(i64 d, const i64[:] primes) nogil:
    cdef double f = 1.0
    cdef Py_ssize_t i
    cdef i64 p, c
    for i in range(primes.shape[0]):
        p = primes[i]
        c = _kronecker_i64(d, p)
        if c:
            f *= p / (<double>(p - c))
    return f


def euler_product(d, primes):
    """prod_{p in primes} (1 - chi_d(p)/p)^(-1), in ascending order."""
    primes_arr = np.ascontiguousarray(primes, dtype=np.int64)
    cdef i64[:] pv = primes_arr
    cdef i64 dd = d
    cdef double out
    with nogil:
        out = _euler_product(dd, pv)
    return out


def prime_tail_sum(d, primes):
    """sum_{p in primes} chi_d(p)/p with Kahan summation."""
    primes_arr = np.ascontiguousarray(primes, dtype=np.int64)
    cdef i64[:] pv = primes_arr
    cdef i64 dd = d
    cdef double s = 0.0, comp = 0.0, term, y, t
    cdef Py_ssize_t i
    cdef i64 p, c
    with nogil:
        for i in range(pv.shape[0]):
            p = pv[i]
            c = _kronecker_i64(dd, p)
            if c:
                term = c / (<double>p)
                y = term - comp
                t = s + y
                comp = (t - s) - y
                s = t
    return s


def euler_and_tail(d, zprimes, y):
    """(euler product over zprimes, tail sum over those p with p > y),
    evaluating each character value once."""
    primes_arr = np.ascontiguousarray(zprimes, dtype=np.int64)
    cdef i64[:] pv = primes_arr
    cdef i64 dd = d
    cdef double yy = y
    cdef double f = 1.0, s = 0.0, comp = 0.0, term, w, t
    cdef Py_ssize_t i
    cdef i64 p, c
    with nogil:
        for i in range(pv.shape[0]):
            p = pv[i]
            c = _kronecker_i64(dd, p)
            if c:
                f *= p / (<double>(p - c))
                if p > yy:
                    term = c / (<double>p)
                    w = term - comp
                    t = s + w
                    comp = (t - s) - w
                    s = t
    return f, s


def census_scan(ds, lpf, zprimes, factor, tol):
    """For each fundamental d in ds: smoothed exact L, truncated Euler
    product over zprimes, and the relative error; returns
    (checked, exceptions) with exceptions = [(d, exact, trunc, rel)] for
    |rel| > tol, ascending in d."""
    ds_arr = np.ascontiguousarray(ds, dtype=np.int64)
    primes_arr = np.ascontiguousarray(zprimes, dtype=np.int64)
    cdef i64[:] dv = ds_arr
    cdef i64[:] pv = primes_arr
    cdef const int[:] spf = lpf
    cdef double fac = factor
    cdef double tt = tol
    cdef Py_ssize_t count = dv.shape[0]
    cdef i64 dmax = 0
    cdef Py_ssize_t i
    for i in range(count):
        if dv[i] > dmax:
            dmax = dv[i]
    cdef i64 nmax_top = <i64>(fac * _isqrt64(dmax)) + 6
    chi_arr = np.zeros(nmax_top + 1, dtype=np.int8)
    cdef i8[:] chi = chi_arr
    cdef i64 d, nmax
    cdef double exact, trunc, rel
    exceptions = []
    for i in range(count):
        d = dv[i]
        with nogil:
            nmax = <i64>(fac * _isqrt64(d)) + 5
            _fill_chi(d, nmax + 1, spf, chi)
            exact = _smoothed_from_chi(d, chi, nmax)
            trunc = _euler_product(d, pv)
            rel = trunc / exact - 1.0
        if rel > tt or rel < -tt:
            exceptions.append((int(d), exact, trunc, rel))
    return int(count), exceptions


# ------------------------------------------------------------ Pell scans

cdef i64 _census_count_one(i64 d, double theta, bint exact) nogil:
    cdef i64 nmax, mmax, n, base, v, m, total
    cdef int j
    mmax = d if exact else <i64>c_pow(<double>d, theta)
    nmax = _isqrt64((mmax * mmax + 4) // d)
    total = 0
    for n in range(1, nmax + 1):
        base = d * n * n
        for j in range(2):
            v = base + 4 if j == 0 else base - 4
            if v >= 1:
                m = _isqrt64(v)
                if m * m == v and 1 <= m <= mmax:
                    total += 1
    return total


def pell_census_count(d_lo, d_hi, theta):
    """Total count of Pell +-4 solutions with m <= d^theta over a d range."""
    cdef i64 lo = d_lo, hi = d_hi
    cdef double th = theta
    cdef bint exact = theta == 1.0
    cdef i64 total = 0
    cdef i64 d
    with nogil:
        for d in range(lo, hi):
            total += _census_count_one(d, th, exact)
    return int(total)


def pell_census_count_masked(d_lo, d_hi, theta, mask):
    """Like pell_census_count but only over d with mask[d - d_lo] true."""
    cdef i64 lo = d_lo, hi = d_hi
    cdef double th = theta
    cdef bint exact = theta == 1.0
    mask_arr = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef const unsigned char[:] mv = mask_arr
    cdef i64 total = 0
    cdef i64 d
    with nogil:
        for d in range(lo, hi):
            if mv[d - lo]:
                total += _census_count_one(d, th, exact)
    return int(total)
