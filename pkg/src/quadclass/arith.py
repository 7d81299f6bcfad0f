"""Exact integer arithmetic: Kronecker symbols, factorization, squarefree
decompositions and complete character sums of 4a^2 + 1.

All functions are pure; sieve tables are immutable once built and safe to
share across threads.  Everything is exact integer arithmetic (python
ints), so there is no overflow ceiling beyond memory; the compiled fast
paths are used automatically while operands fit in 64 bits.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels, primes
from .errors import ConsistencyError


@dataclass(frozen=True)
class Factorization:
    """value = prod p^e over factors, primes strictly increasing."""

    value: int
    factors: tuple  # ((prime, exponent), ...)

    def omega(self):
        """Number of prime divisors counted with multiplicity."""
        return sum(e for _, e in self.factors)

    def divisors(self):
        """All positive divisors, ascending."""
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**j for d in divs for j in range(e + 1)]
        return sorted(divs)


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """value = square_part_root**2 * squarefree_part."""

    value: int
    square_part_root: int
    squarefree_part: int


def kronecker(d, m):
    """Kronecker symbol (d/m), completely multiplicative in m >= 1.

    Classical convention at m = 2: 0 for even d, +1 for d = +-1 mod 8,
    -1 for d = +-3 mod 8.
    """
    if m < 1:
        raise ValueError("kronecker: m must be a positive integer")
    return kernels.kronecker(d, m)


def least_prime_factor_sieve(limit, budget=None):
    """Least-prime-factor table for 2 <= v <= limit (memory O(limit))."""
    return primes.lpf_sieve(limit, budget=budget)


def factorize(v, sieve=None):
    """Factorization of v >= 1; uses an lpf table when provided/applicable."""
    if v < 1:
        raise ValueError("factorize: v must be >= 1")
    if v == 1:
        return Factorization(1, ())
    factors = []
    if sieve is not None and v < len(sieve):
        n = v
        while n > 1:
            p = int(sieve[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
        return Factorization(v, tuple(factors))
    n = v
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                factors.append((p, e))
        f += 6
    if n > 1:
        factors.append((n, 1))
    factors.sort()
    return Factorization(v, tuple(factors))


def squarefree_decompose(q):
    """Write odd q = q1^2 * q0 with q0 squarefree."""
    if q < 1 or q % 2 == 0:
        raise ValueError("squarefree_decompose: q must be a positive odd integer")
    q1 = 1
    q0 = 1
    for p, e in factorize(q).factors:
        q1 *= p ** (e // 2)
        if e % 2:
            q0 *= p
    return SquarefreeDecomposition(q, q1, q0)


def is_squarefree(v):
    """True iff no prime square divides v >= 1."""
    return all(e == 1 for _, e in factorize(v).factors)


def is_fundamental_discriminant(d):
    """True iff d > 1 is the discriminant of a real quadratic field."""
    if d <= 1:
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def complete_sum_f(q, method="direct"):
    """Exact complete character sum sum_{a=1..q} ((4a^2+1)/q) for odd q.

    ``method`` is "direct" (O(q) evaluation) or "crt" (prime-power blocks
    recombined multiplicatively); the two always agree.
    """
    if q < 1 or q % 2 == 0:
        raise ValueError("complete_sum_f: q must be a positive odd integer")
    if q == 1:
        return 1
    if method == "direct":
        if q > 10**8:
            raise ValueError(
                "complete_sum_f: direct route is O(q); use method='crt' beyond 1e8"
            )
        return kernels.complete_sum_direct(q)
    if method == "crt":
        total = 1
        for p, e in factorize(q).factors:
            total *= _block_sum(p, e)
        return total
    raise ValueError(f"complete_sum_f: unknown method {method!r}")


def _block_sum(p, e):
    """sum_{a=1..p^e} ((4a^2+1)/p)^e for an odd prime p."""
    if e % 2 == 1:
        # one full inner period contributes the Jacobsthal value -1
        return -(p ** (e - 1))
    # even exponent: symbols square to 1 except where p | 4a^2+1
    roots = 1 + kernels.kronecker(-1, p)  # roots of 4a^2+1 = 0 mod p
    return p**e - roots * p ** (e - 1)


def jacobsthal_check(p, b):
    """Exact sum_{n=1..p} ((n^2+b)/p) for an odd prime p (-1 when p does
    not divide b)."""
    if p < 3 or p % 2 == 0 or not primes.is_prime(p):
        raise ValueError("jacobsthal_check: p must be an odd prime")
    return kernels.jacobsthal_sum(p, b % p)


def charsum_partial(q, x):
    """Exact partial sum sum_{n<=x} ((4n^2+1)/q) for odd q, x >= 1."""
    if q < 1 or q % 2 == 0:
        raise ValueError("charsum_partial: q must be a positive odd integer")
    if x < 1:
        raise ValueError("charsum_partial: x must be >= 1")
    if q == 1:
        return x
    k, r = divmod(x, q)
    period = kernels.f_symbol_period(q)
    complete = int(period[1:].sum())
    rem = int(period[1 : r + 1].sum()) if r else 0
    return k * complete + rem


def charsum_prefix(q):
    """Prefix sums S[i] = sum_{1<=n<=i} ((4n^2+1)/q) for 0 <= i <= q."""
    period = kernels.f_symbol_period(q).copy()
    period[0] = 0
    return np.cumsum(period, dtype=np.int64)


def verify_complete_sum_routes(q):
    """Assert direct and CRT routes agree for odd q; returns the value."""
    direct = complete_sum_f(q, method="direct")
    crt = complete_sum_f(q, method="crt")
    if direct != crt:
        raise ConsistencyError(
            f"complete_sum_f({q}): direct={direct} crt={crt} disagree"
        )
    return direct


def icbrt(n):
    """Integer cube root: largest r with r^3 <= n (n >= 0)."""
    if n < 0:
        raise ValueError("icbrt: n must be >= 0")
    if n == 0:
        return 0
    r = 1 << -(-n.bit_length() // 3)
    while True:
        r2 = (2 * r + n // (r * r)) // 3
        if r2 >= r:
            break
        r = r2
    while r * r * r > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def isqrt(n):
    return math.isqrt(n)
