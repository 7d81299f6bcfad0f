"""Continued fractions of sqrt(d), fundamental units, regulators and
exhaustive censuses of small Pell solutions m^2 - d n^2 = +-4."""

import math
from dataclasses import dataclass

import numpy as np

from . import arith, kernels, parallel, primes
from .errors import ConsistencyError

_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class ContinuedFractionExpansion:
    d: int
    a0: int
    period: tuple

    @property
    def period_length(self):
        return len(self.period)


@dataclass(frozen=True)
class FundamentalUnit:
    """Minimal unit (a + b*sqrt(d))/2 with a^2 - d b^2 = 4*norm_sign."""

    d: int
    a: int
    b: int
    norm_sign: int
    regulator: float


@dataclass(frozen=True)
class PellCensus:
    d: int
    theta: float
    solutions: tuple  # ((m, n, sign), ...) sorted by m; sign in {+1, -1}

    def __len__(self):
        return len(self.solutions)


@dataclass(frozen=True)
class PellAggregate:
    x: int
    theta: float
    total: int
    bound_skeleton: float
    ratio: float
    fundamental_only: bool


def cf_sqrt(d):
    """Periodic continued fraction of sqrt(d) for non-square d >= 2."""
    if d < 2:
        raise ValueError("cf_sqrt: d must be >= 2")
    a0 = math.isqrt(d)
    if a0 * a0 == d:
        raise ValueError(f"cf_sqrt: {d} is a perfect square")
    period = []
    m, q, a = 0, 1, a0
    while True:
        m = q * a - m
        q = (d - m * m) // q
        a = (a0 + m) // q
        period.append(a)
        if q == 1:
            break
    return ContinuedFractionExpansion(d, a0, tuple(period))


def pell_pm1_solution(d):
    """Fundamental solution (x, y, norm) of x^2 - d y^2 = +-1 via the
    continued fraction of sqrt(d); norm is (-1)^period_length."""
    cf = cf_sqrt(d)
    terms = (cf.a0,) + cf.period[:-1]
    p_prev, p = 1, terms[0]
    q_prev, q = 0, 1
    for a in terms[1:]:
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
    norm = -1 if cf.period_length % 2 else 1
    if p * p - d * q * q != norm:
        raise ConsistencyError(f"pell_pm1_solution({d}): convergent check failed")
    return p, q, norm


def _log_half_quad(a, b, d):
    """log((a + b*sqrt(d))/2) to at least 12 significant digits, with a, b
    exact (possibly huge) integers."""
    t = b * b * d
    if a < 2**52 and t < 2**52:
        return math.log((a + math.sqrt(t)) / 2.0)
    # scale down so the leading 62 bits survive exactly
    bl = max(a.bit_length(), (t.bit_length() + 1) // 2)
    sh = max(0, bl - 62)
    af = a >> sh
    tf = math.isqrt(t >> (2 * sh))
    return math.log(af + tf) + sh * _LOG2 - _LOG2


def fundamental_unit(d):
    """Fundamental unit of the real quadratic field of discriminant d.

    Returns the minimal positive (a, b) with a^2 - d b^2 = +-4; the
    regulator is log((a + b*sqrt(d))/2).
    """
    if not arith.is_fundamental_discriminant(d):
        raise ValueError(f"fundamental_unit: {d} is not a fundamental discriminant")
    if d % 4 == 0:
        x, y, norm = pell_pm1_solution(d // 4)
        a, b = 2 * x, y
    else:
        x, y, norm = pell_pm1_solution(d)
        a, b = 2 * x, 2 * y
        # the +-4 equation may have a solution in odd integers whose cube
        # is (x, y); its trace t satisfies t^3 - 3*norm*t = 2x
        target = 2 * x
        c = arith.icbrt(target)
        for t in (c - 1, c, c + 1, c + 2):
            if t >= 1 and t * t * t - 3 * norm * t == target:
                num = t * t - 4 * norm
                if num % d == 0:
                    bb = math.isqrt(num // d)
                    if bb * bb * d == num:
                        a, b = t, bb
                        break
    reg = _log_half_quad(a, b, d)
    return FundamentalUnit(d, a, b, norm, reg)


def pell_census(d, theta):
    """Exhaustive census of (m, n), m,n >= 1, m <= d^theta, m^2 - d n^2 = +-4.

    Enumerates n <= sqrt((mmax^2 + 4)/d) with mmax = floor(d^theta) (the
    -4 equation allows n slightly beyond d^(theta-1/2)) and tests
    d n^2 +- 4 for perfect squares with integer square roots.
    """
    if not 0.5 < theta < 1.5:
        raise ValueError("pell_census: theta must lie in (1/2, 3/2)")
    if d < 2:
        raise ValueError("pell_census: d must be >= 2")
    mmax = d if theta == 1.0 else int(float(d) ** theta)
    nmax = math.isqrt((mmax * mmax + 4) // d)
    sols = []
    for n in range(1, nmax + 1):
        base = d * n * n
        for sign in (1, -1):
            v = base + 4 * sign
            if v >= 1:
                m = math.isqrt(v)
                if m * m == v and 1 <= m <= mmax:
                    sols.append((m, n, sign))
    sols.sort()
    return PellCensus(d, theta, tuple(sols))


def _fundamental_mask(lo, hi):
    """Boolean mask over [lo, hi) marking fundamental discriminants."""
    n = hi - lo
    idx = np.arange(lo, hi, dtype=np.int64)
    sq = np.ones(hi, dtype=bool)  # squarefree flags for 0..hi-1
    for p in range(2, math.isqrt(hi - 1) + 1):
        sq[p * p :: p * p] = False
    mask = np.zeros(n, dtype=bool)
    m1 = (idx % 4 == 1) & sq[lo:hi] & (idx > 1)
    mask |= m1
    quarter = idx // 4
    m0 = (idx % 4 == 0) & (quarter % 4 >= 2) & sq[quarter]
    mask |= m0
    return mask


def pell_census_aggregate(x, theta, fundamental_only=False, threads=1, chunk=8192):
    """Total of |S_theta(d)| over 2 <= d <= x with the bound skeleton
    (x^(1/2) + x^(theta-1/2)) (log x)^2 and their ratio."""
    if x < 100:
        raise ValueError("pell_census_aggregate: x must be >= 100")
    if not 0.5 < theta < 1.5:
        raise ValueError("pell_census_aggregate: theta must lie in (1/2, 3/2)")
    if float(x) ** (2 * theta) >= float(2**62):
        raise ValueError("pell_census_aggregate: x^(2*theta) exceeds 64-bit range")
    ranges = list(parallel.chunk_ranges(2, x + 1, chunk))
    if fundamental_only:

        def worker(r):
            lo, hi = r
            return kernels.pell_census_count_masked(
                lo, hi, theta, _fundamental_mask(lo, hi)
            )

    else:

        def worker(r):
            lo, hi = r
            return kernels.pell_census_count(lo, hi, theta)

    total = sum(parallel.run_ordered(worker, ranges, threads))
    skeleton = (math.sqrt(x) + float(x) ** (theta - 0.5)) * math.log(x) ** 2
    return PellAggregate(x, theta, total, skeleton, total / skeleton, fundamental_only)


_ELL_TWO = {0: 1, 1: 1, 2: 2, 3: 2, 4: 4}


def ell(q):
    """Number of m mod q with m^2 = 4 (mod q); multiplicative in q."""
    if q < 1:
        raise ValueError("ell: q must be >= 1")
    sieve = primes.shared_lpf(q) if 2 <= q <= 10**7 else None
    result = 1
    for p, e in arith.factorize(q, sieve).factors:
        if p == 2:
            result *= _ELL_TWO.get(e, 8)
        else:
            result *= 2
    return result
