"""Pure-python fallback for the compiled kernels.

Every function here has a compiled twin in ``_kernels.pyx`` with the same
name, signature and semantics.  Float-returning kernels perform the exact
same sequence of IEEE double operations as the compiled versions (the
extension is built with -ffp-contract=off), so the two backends produce
bit-identical results; the test suite relies on that.
"""

import math

import numpy as np

BACKEND = "pure"

_EULER_GAMMA = 0.57721566490153286061
_PI = math.pi


def jacobi(a, n):
    """Jacobi symbol (a/n) for odd n >= 1 and a >= 0."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi: n must be a positive odd integer")
    a %= n
    r = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                r = -r
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            r = -r
        a %= n
    return r if n == 1 else 0


def kronecker(d, m):
    """Kronecker symbol (d/m) for m >= 1 and any integer d."""
    if m < 1:
        raise ValueError("kronecker: m must be >= 1")
    r = 1
    while m % 2 == 0:
        if d % 2 == 0:
            return 0
        m //= 2
        if d % 8 in (3, 5):
            r = -r
    return r * jacobi(d % m, m)


def kronecker_table(d, limit, spf):
    """Array chi with chi[a] = kronecker(d, a) for 1 <= a < limit.

    chi[0] is set to 0.  ``spf`` must be a least-prime-factor table
    covering at least ``limit - 1``.
    """
    chi = np.zeros(limit, dtype=np.int8)
    if limit > 1:
        chi[1] = 1
    for a in range(2, limit):
        p = spf[a]
        if p == a:
            chi[a] = kronecker(d, a)
        else:
            chi[a] = chi[p] * chi[a // p]
    return chi


def jacobsthal_sum(p, b):
    """Exact value of sum_{n=1..p} ((n^2 + b)/p) for an odd prime p."""
    chi = _legendre_table(p)
    b %= p
    half = (p - 1) // 2
    s = chi[b]  # n = p contributes ((0 + b)/p)
    for n in range(1, half + 1):
        idx = (n * n + b) % p
        s += 2 * chi[idx]
    return s


def _legendre_table(p):
    chi = np.full(p, -1, dtype=np.int8)
    chi[0] = 0
    for t in range(1, (p - 1) // 2 + 1):
        chi[t * t % p] = 1
    return chi


def jacobsthal_scan(primes, max_violations=32):
    """Check sum_{n=1..p} ((n^2+b)/p) == -1 for every b in 1..p-1.

    Returns (pairs_checked, violations) where violations is a list of
    (p, b, value) triples (empty on success, capped at max_violations).
    """
    pairs = 0
    violations = []
    for p in primes:
        p = int(p)
        chi = _legendre_table(p)
        half = (p - 1) // 2
        nsq = [(n * n) % p for n in range(1, half + 1)]
        for b in range(1, p):
            s = int(chi[b])
            for v in nsq:
                idx = v + b
                if idx >= p:
                    idx -= p
                s += 2 * int(chi[idx])
            pairs += 1
            if s != -1 and len(violations) < max_violations:
                violations.append((p, b, s))
    return pairs, violations


def f_symbol_period(q):
    """Array s with s[a] = ((4a^2+1)/q) for 0 <= a <= q (Jacobi symbol)."""
    out = np.zeros(q + 1, dtype=np.int8)
    for a in range(q + 1):
        out[a] = jacobi((4 * a * a + 1) % q, q)
    return out


def complete_sum_direct(q):
    """sum_{a=1..q} ((4a^2+1)/q) by direct evaluation, q odd."""
    s = 0
    for a in range(1, q + 1):
        s += jacobi((4 * a * a + 1) % q, q)
    return s


def logsine_value(d, chi):
    """L(1, chi_d) from the finite log-sine sum; chi[a] = chi_d(a), len >= d.

    Uses chi(d - a) = chi(a) to fold the sum onto a < d/2 and Kahan
    summation for the accumulation.
    """
    s = 0.0
    comp = 0.0
    half = (d - 1) // 2
    for a in range(1, half + 1):
        ch = int(chi[a])
        if ch:
            x = _PI * a
            x = x / d
            term = ch * math.log(math.sin(x))
            y = term - comp
            t = s + y
            comp = (t - s) - y
            s = t
    return -2.0 * s / math.sqrt(d)


def exp1(x):
    """Exponential integral E1(x) for x > 0."""
    if x <= 0.0:
        raise ValueError("exp1: x must be positive")
    if x < 1.0:
        # power series
        s = 0.0
        p = 1.0
        for k in range(1, 64):
            p *= (-x) / k
            s -= p / k
            if abs(p / k) < 1e-18 * (1.0 + abs(s)):
                break
        return s - _EULER_GAMMA - math.log(x)
    # continued fraction, modified Lentz
    b = x + 1.0
    c = 1e308
    dd = 1.0 / b
    h = dd
    for i in range(1, 200):
        a = -float(i) * i
        b += 2.0
        dd = 1.0 / (a * dd + b)
        c = b + a / c
        delta = c * dd
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-x)


def smoothed_value(d, chi, nmax):
    """L(1, chi_d) from the Gaussian-smoothed sum (exponentially convergent).

    chi[n] = chi_d(n) must cover n <= nmax.  Valid for any positive
    fundamental discriminant d.
    """
    rpd = math.sqrt(_PI / d)
    sqd = math.sqrt(d)
    s = 0.0
    comp = 0.0
    for n in range(1, nmax + 1):
        ch = int(chi[n])
        if ch:
            a1 = math.erfc(rpd * n) / n
            a2 = exp1((_PI * (n * n)) / d) / sqd
            term = ch * (a1 + a2)
            y = term - comp
            t = s + y
            comp = (t - s) - y
            s = t
    return s


def euler_product(d, primes):
    """prod_{p in primes} (1 - chi_d(p)/p)^(-1), in ascending order."""
    f = 1.0
    for p in primes:
        p = int(p)
        ch = kronecker(d, p)
        if ch:
            f *= p / float(p - ch)
    return f


def prime_tail_sum(d, primes):
    """sum_{p in primes} chi_d(p)/p with Kahan summation."""
    s = 0.0
    comp = 0.0
    for p in primes:
        p = int(p)
        ch = kronecker(d, p)
        if ch:
            term = ch / float(p)
            y = term - comp
            t = s + y
            comp = (t - s) - y
            s = t
    return s


def euler_and_tail(d, zprimes, y):
    """(euler product over zprimes, tail sum over those p with p > y),
    evaluating each character value once."""
    f = 1.0
    s = 0.0
    comp = 0.0
    for p in zprimes:
        p = int(p)
        ch = kronecker(d, p)
        if ch:
            f *= p / float(p - ch)
            if p > y:
                term = ch / float(p)
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
    exceptions = []
    count = 0
    for d in ds:
        d = int(d)
        nmax = int(factor * math.isqrt(d)) + 5
        chi = kronecker_table(d, nmax + 1, lpf)
        exact = smoothed_value(d, chi, nmax)
        trunc = euler_product(d, zprimes)
        rel = trunc / exact - 1.0
        count += 1
        if abs(rel) > tol:
            exceptions.append((d, exact, trunc, rel))
    return count, exceptions


def _isqrt64(v):
    return math.isqrt(v)


def _census_count_one(d, theta, exact):
    mmax = d if exact else int(float(d) ** theta)
    nmax = math.isqrt((mmax * mmax + 4) // d)
    total = 0
    for n in range(1, nmax + 1):
        base = d * n * n
        for v in (base + 4, base - 4):
            if v >= 1:
                m = math.isqrt(v)
                if m * m == v and 1 <= m <= mmax:
                    total += 1
    return total


def pell_census_count(d_lo, d_hi, theta):
    """Total number of (m, n), m,n >= 1, m <= d^theta, m^2 - d n^2 = +-4,
    summed over d_lo <= d < d_hi."""
    exact = theta == 1.0
    return sum(_census_count_one(d, theta, exact) for d in range(d_lo, d_hi))


def pell_census_count_masked(d_lo, d_hi, theta, mask):
    """Like pell_census_count but only over d with mask[d - d_lo] true."""
    exact = theta == 1.0
    return sum(
        _census_count_one(d, theta, exact)
        for d in range(d_lo, d_hi)
        if mask[d - d_lo]
    )
