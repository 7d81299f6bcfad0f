"""The discriminant family d = 4n^2 + 1.

Squarefree members are fundamental discriminants whose fundamental unit
2n + sqrt(d) is as small as possible, which makes the family the natural
hunting ground for extreme class numbers.  This module enumerates the
family, measures its density against the local-density main term, builds
members whose character splits at all small primes, and ranks candidates
by the extremal statistic h log d / (sqrt(d) loglog d).
"""

import math
import random
from dataclasses import dataclass

import numpy as np

from . import forms, kernels, parallel, pell, primes
from .errors import ConsistencyError


@dataclass(frozen=True)
class FamilyMember:
    n: int
    d: int
    squarefree: bool


@dataclass(frozen=True)
class DensityReport:
    x: int
    q: int
    count: int
    main_term_local: float
    main_term_literal: float
    rel_error: float  # count vs local-density main term


@dataclass(frozen=True)
class ExtremeRecord:
    d: int
    n: int
    h: int
    h_estimate: float
    regulator: float
    l_truncated: float
    tail: float
    statistic: float


@dataclass(frozen=True)
class ExtremeSearchReport:
    x: int
    y: float
    z: float
    records: tuple  # ExtremeRecord, descending statistic
    tail_threshold: float
    tail_exceed_count: int
    reference_constant: float


def n_limit(x):
    """Largest n with 4n^2 + 1 <= x."""
    if x < 5:
        return 0
    return math.isqrt((x - 1) // 4)


def _sqrt_minus_one(p):
    """A square root of -1 mod p for a prime p = 1 mod 4."""
    for z in range(2, p):
        if pow(z, (p - 1) // 2, p) == p - 1:
            return pow(z, (p - 1) // 4, p)
    raise ValueError(f"no square root of -1 mod {p}")


def squarefree_mask(nmax):
    """mask[n] is True iff 4n^2+1 is squarefree, for 0 <= n <= nmax.

    Sieves the roots of 4n^2 + 1 = 0 mod p^2 over all primes p = 1 mod 4
    with p <= 2*nmax + 1 (no other prime square can divide 4n^2+1), so
    the mask is exact.
    """
    mask = np.ones(nmax + 1, dtype=bool)
    if nmax < 1:
        return mask
    for p in primes.primes_upto(2 * nmax + 1):
        p = int(p)
        if p % 4 != 1:
            continue
        p2 = p * p
        i = _sqrt_minus_one(p)
        # Hensel lift of x^2 + 1 = 0 from mod p to mod p^2
        i2 = (i - (i * i + 1) * pow(2 * i, -1, p2)) % p2
        root = (i2 * pow(2, -1, p2)) % p2
        for r in (root, p2 - root):
            if r <= nmax:
                mask[r::p2] = False
    return mask


def enumerate_family(x, q=1, mask=None):
    """All squarefree d = 4n^2+1 <= x with q | n, ascending in n."""
    if x < 5:
        raise ValueError("enumerate_family: x must be >= 5")
    if q < 1:
        raise ValueError("enumerate_family: q must be >= 1")
    nmax = n_limit(x)
    if mask is None:
        mask = squarefree_mask(nmax)
    for n in range(q, nmax + 1, q):
        if mask[n]:
            yield FamilyMember(n, 4 * n * n + 1, True)


def family_discriminants(x, q=1, mask=None):
    """Array of squarefree d = 4n^2+1 <= x with q | n (and the n array)."""
    nmax = n_limit(x)
    if mask is None:
        mask = squarefree_mask(nmax)
    ns = np.arange(q, nmax + 1, q, dtype=np.int64)
    ns = ns[mask[ns]]
    return ns, 4 * ns * ns + 1


def local_root_count(p):
    """rho(p^2): number of n mod p^2 with p^2 | 4n^2+1 (2 for p = 1 mod 4,
    else 0)."""
    return 2 if p % 4 == 1 else 0


def density_check(x, q=1, product_cutoff=10**5):
    """Empirical count of the family against the main term.

    The local-density main term is (sqrt(x)/2q) prod_{p not| q}
    (1 - rho(p^2)/p^2), where rho(p^2) is the exact number of roots of
    4n^2+1 mod p^2; the all-primes product (1 - 2/p^2) is reported
    alongside for comparison.  Products are truncated at
    ``product_cutoff`` (tail below 1e-9).
    """
    if x < 5:
        raise ValueError("density_check: x must be >= 5")
    ns, _ = family_discriminants(x, q)
    count = len(ns)
    local = 1.0
    literal = 1.0
    for p in primes.primes_upto(product_cutoff):
        p = int(p)
        if q % p == 0:
            continue
        pp = float(p * p)
        literal *= 1.0 - 2.0 / pp
        if p % 4 == 1:
            local *= 1.0 - 2.0 / pp
    lead = math.sqrt(x) / (2.0 * q)
    main_local = lead * local
    main_literal = lead * literal
    rel = count / main_local - 1.0 if main_local else math.inf
    return DensityReport(int(x), q, count, main_local, main_literal, rel)


def splitting_modulus(y):
    """Product of all primes <= y."""
    q = 1
    for p in primes.primes_upto(int(y)):
        q *= int(p)
    return q


def construct_splitting(x, y, mask=None):
    """Squarefree d = 4n^2+1 <= x with (prod_{p<=y} p) | n; every emitted
    d is verified to satisfy chi_d(p) = 1 for all primes p <= y."""
    if x < 5:
        raise ValueError("construct_splitting: x must be >= 5")
    q = splitting_modulus(y)
    if 2 * q > math.isqrt(x):
        return []
    small = [int(p) for p in primes.primes_upto(int(y))]
    members = []
    for mem in enumerate_family(x, q, mask=mask):
        for p in small:
            if kernels.kronecker(mem.d, p) != 1:
                raise ConsistencyError(
                    f"splitting violated: chi_{mem.d}({p}) != 1 (n={mem.n})"
                )
        members.append(mem)
    return members


def splitting_frontier(d, cap=1000):
    """Largest prime p <= cap such that chi_d(r) = 1 for every prime r <= p
    (0 if chi_d(2) != 1)."""
    best = 0
    for p in primes.primes_upto(cap):
        p = int(p)
        if kernels.kronecker(d, p) != 1:
            break
        best = p
    return best


def default_extreme_params(x):
    """The search defaults: y = log x / (2 loglog x) floored at 3,
    z = (log x)^6 capped at 1e6."""
    lx = math.log(x)
    y = max(3.0, lx / (2.0 * math.log(lx)))
    z = min(lx**6, 1e6)
    return y, z


def _member_record(n, d, y, z, zprimes):
    ltrunc, tail = kernels.euler_and_tail(d, zprimes, y)
    # family regulator: the fundamental unit is 2n + sqrt(d) for n >= 2
    reg = math.log(2 * n + math.sqrt(d))
    h_est = math.sqrt(d) * ltrunc / (2.0 * reg)
    ll = math.log(math.log(d))
    stat = h_est * math.log(d) / (math.sqrt(d) * ll)
    return ExtremeRecord(d, n, round(h_est), h_est, reg, ltrunc, tail, stat)


def extreme_search(x, y=None, z=None, threads=1):
    """Construct splitting members of the family up to x and rank them by
    the extremal statistic; reports how many tail sums over (y, z) exceed
    (loglog x)^(-1/4)."""
    x = int(x)
    dy, dz = default_extreme_params(x)
    y = dy if y is None else float(y)
    z = dz if z is None else float(z)
    members = construct_splitting(x, y)
    zprimes = primes.primes_upto(int(z))

    def worker(mem):
        return _member_record(mem.n, mem.d, y, z, zprimes)

    records = parallel.run_ordered(worker, members, threads)
    records.sort(key=lambda r: (-r.statistic, r.d))
    threshold = math.log(math.log(x)) ** (-0.25)
    exceed = sum(1 for r in records if abs(r.tail) > threshold)
    return ExtremeSearchReport(
        x, y, z, tuple(records), threshold, exceed, forms.EXTREME_REFERENCE
    )


def statistic_sample(x, size, seed, y=None, z=None, mask=None):
    """Extremal statistics of ``size`` seeded-random squarefree members of
    the family up to x (n >= 2), comparable with extreme_search output."""
    x = int(x)
    dy, dz = default_extreme_params(x)
    y = dy if y is None else float(y)
    z = dz if z is None else float(z)
    nmax = n_limit(x)
    if nmax < 2:
        raise ValueError("statistic_sample: x too small")
    if mask is None:
        mask = squarefree_mask(nmax)
    rng = random.Random(seed)
    zprimes = primes.primes_upto(int(z))
    records = []
    while len(records) < size:
        n = rng.randint(2, nmax)
        if mask[n]:
            records.append(_member_record(n, 4 * n * n + 1, y, z, zprimes))
    return records


def verify_family_unit(n):
    """Check that the fundamental unit of squarefree d = 4n^2+1 is
    2n + sqrt(d), i.e. (a, b) = (4n, 2) with norm -1.  True for every
    n >= 2; at n = 1 (d = 5) the fundamental unit is (1 + sqrt(5))/2,
    whose cube is 2 + sqrt(5)."""
    u = pell.fundamental_unit(4 * n * n + 1)
    return (u.a, u.b, u.norm_sign) == (4 * n, 2, -1)
