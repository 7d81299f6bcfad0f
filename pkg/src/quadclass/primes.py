"""Prime sieves and primality tests.

The prime list and least-prime-factor tables are cached module-wide and
grow on demand; once built they are immutable, so they can be shared
freely across worker threads.
"""

import math

import numpy as np

from .errors import ResourceError

# memory budget for sieve tables (bytes); lpf tables are int32
SIEVE_BUDGET_BYTES = 2**31

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sieve_bool(limit):
    """Boolean sieve: out[v] is True iff v is prime, 0 <= v <= limit."""
    out = np.zeros(limit + 1, dtype=bool)
    if limit >= 2:
        out[2] = True
        out[3::2] = True
        for p in range(3, math.isqrt(limit) + 1, 2):
            if out[p]:
                out[p * p :: 2 * p] = False
    return out


def lpf_sieve(limit, budget=None):
    """Least-prime-factor table: lpf[v] is the smallest prime dividing v.

    lpf[0] = 0 and lpf[1] = 1; primes map to themselves.  Memory is
    O(limit) (4 bytes per entry); a limit beyond the configured budget
    raises ResourceError.
    """
    if limit < 2:
        raise ValueError("lpf_sieve: limit must be >= 2")
    budget = SIEVE_BUDGET_BYTES if budget is None else budget
    if 4 * (limit + 1) > budget:
        raise ResourceError(
            f"lpf table for limit={limit} needs {4 * (limit + 1)} bytes, "
            f"budget is {budget}"
        )
    lpf = np.zeros(limit + 1, dtype=np.int32)
    lpf[1] = 1
    lpf[2::2] = 2
    for p in range(3, math.isqrt(limit) + 1, 2):
        if lpf[p] == 0:
            seg = lpf[p * p :: 2 * p]
            seg[seg == 0] = p
    rest = np.flatnonzero(lpf == 0)
    lpf[rest] = rest
    lpf[0] = 0
    return lpf


class _Cache:
    def __init__(self):
        self.limit = 0
        self.primes = np.empty(0, dtype=np.int64)
        self.lpf_limit = 0
        self.lpf = None

    def primes_upto(self, limit):
        limit = int(limit)
        if limit > self.limit:
            bound = max(limit, 2 * self.limit, 1 << 16)
            self.primes = np.flatnonzero(sieve_bool(bound)).astype(np.int64)
            self.limit = bound
        return self.primes[: np.searchsorted(self.primes, limit, side="right")]

    def lpf_upto(self, limit):
        limit = int(limit)
        if self.lpf is None or limit > self.lpf_limit:
            bound = max(limit, 2 * self.lpf_limit, 1 << 16)
            self.lpf = lpf_sieve(bound)
            self.lpf_limit = bound
        return self.lpf


_cache = _Cache()


def primes_upto(limit):
    """Sorted array of primes <= limit (cached)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    return _cache.primes_upto(limit)


def primes_between(lo, hi):
    """Sorted array of primes p with lo < p < hi (strict, float bounds ok)."""
    if hi <= 2:
        return np.empty(0, dtype=np.int64)
    ps = _cache.primes_upto(math.ceil(hi))
    # searchsorted sides give strict inequalities at integer endpoints
    i = np.searchsorted(ps, lo, side="right")
    j = np.searchsorted(ps, hi, side="left")
    return ps[i:j]


def shared_lpf(limit):
    """Cached least-prime-factor table covering at least ``limit``."""
    return _cache.lpf_upto(limit)
