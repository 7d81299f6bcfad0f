"""Ordered-factorization coefficients b_r(m; y, z), empirical 2k-th
moments of prime tail sums over the family, character-sum bound censuses
and an exploratory check of the quadratic large sieve inequality."""

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from . import arith, family, kernels, parallel, primes


@dataclass(frozen=True)
class MomentReport:
    x: int
    y: float
    z: float
    k: int
    empirical: float
    skeleton: float  # sqrt(x) * (k / (y log y))^k
    c_estimate: float
    family_size: int
    k_guard: float  # log x / (8 A loglog x) with A = log z / loglog x
    mode: str


@dataclass(frozen=True)
class CharsumCensusRow:
    q: int
    q0: int
    complete_sum: int
    period_ratio: float  # |complete_sum| / q
    max_ratio: float  # max over sampled x in [q^2, 4q^2] of |S(x)| q0 / x


@dataclass(frozen=True)
class SieveRatioReport:
    x: int
    N: int
    trials: int
    seed: int
    ratios: tuple
    max_ratio: float
    mean_ratio: float


def b_coefficient(m, r, y, z):
    """Number of ordered r-tuples of primes in (y, z) with product m.

    Zero unless every prime factor of m lies strictly inside (y, z) and
    Omega(m) = r; then it is the multinomial r!/(a_1! ... a_s!).
    """
    if m < 1:
        raise ValueError("b_coefficient: m must be >= 1")
    if r < 0:
        raise ValueError("b_coefficient: r must be >= 0")
    if m == 1:
        return 1 if r == 0 else 0
    fac = arith.factorize(m)
    if any(not y < p < z for p, _ in fac.factors):
        return 0
    if fac.omega() != r:
        return 0
    value = math.factorial(r)
    for _, e in fac.factors:
        value //= math.factorial(e)
    return value


def support_integers(limit, y, z, max_omega):
    """All m <= limit whose prime factors all lie in (y, z), with
    1 <= Omega(m) <= max_omega; returns (m, omega) pairs."""
    ps = [int(p) for p in primes.primes_between(y, z)]
    out = []

    def extend(value, omega, start):
        for i in range(start, len(ps)):
            v = value * ps[i]
            if v > limit:
                break
            out.append((v, omega + 1))
            if omega + 1 < max_omega:
                extend(v, omega + 1, i)

    extend(1, 0, 0)
    out.sort()
    return out


def _family_tails(x, y, z, mode):
    yz = primes.primes_between(y, z)
    if mode == "family":
        ns, ds = family.family_discriminants(x)
    elif mode == "all_n":
        nmax = family.n_limit(x)
        ns = np.arange(1, nmax + 1, dtype=np.int64)
        ds = 4 * ns * ns + 1
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return ds, yz


def moment_grid(x, y, z, ks, mode="family", threads=1, chunk=4096):
    """MomentReport for each k in ks over one pass of tail sums."""
    x = int(x)
    if y < 2 or y >= z:
        raise ValueError("moment_grid: need 2 <= y < z")
    ds, yz = _family_tails(x, y, z, mode)

    def worker(dchunk):
        return [kernels.prime_tail_sum(int(d), yz) for d in dchunk]

    tails = []
    for part in parallel.run_ordered(
        worker, parallel.chunk_list(list(ds), chunk), threads
    ):
        tails.extend(part)
    ylogy = y * math.log(y)
    loglogx = math.log(math.log(x))
    a_eff = math.log(z) / loglogx if z > 1 else 1.0
    guard = math.log(x) / (8.0 * a_eff * loglogx)
    reports = []
    for k in ks:
        if k < 0:
            raise ValueError("moment_grid: k must be >= 0")
        powers = [t ** (2 * k) for t in tails]
        emp = _chunked_fsum(powers, chunk)
        skel = math.sqrt(x) * (k / ylogy) ** k if k else math.sqrt(x)
        c_est = (emp / math.sqrt(x)) ** (1.0 / k) * ylogy / k if k else float("nan")
        reports.append(
            MomentReport(x, y, z, k, emp, skel, c_est, len(tails), guard, mode)
        )
    return reports


def _chunked_fsum(values, chunk):
    parts = [math.fsum(values[i : i + chunk]) for i in range(0, len(values), chunk)]
    return math.fsum(parts)


def moment_empirical(x, y, z, k, mode="family", threads=1):
    """sum over the family of (sum_{y<p<z} chi_d(p)/p)^(2k), with the
    bound skeleton and the empirical constant estimate."""
    return moment_grid(x, y, z, [k], mode=mode, threads=threads)[0]


def moment_expansion(x, y, z, k, mode="family"):
    """The same moment computed through the expansion
    sum_m b_{2k}(m; y, z) (sum_d chi_d(m)) / m."""
    ds, _ = _family_tails(x, y, z, mode)
    ps = [int(p) for p in primes.primes_between(y, z)]
    total = []
    for combo in combinations_with_replacement(ps, 2 * k):
        m = math.prod(combo)
        b = b_coefficient(m, 2 * k, y, z)
        csum = sum(kernels.kronecker(int(d), m) for d in ds)
        total.append(b * csum / m)
    return math.fsum(total)


def comb_inequality_check(n_max, y, z, l_max=4, r_max=4):
    """Exhaustively verify b_{l+r}(mn) <= C(l+r, l) b_l(n) b_r(m) over the
    support, l + r <= 8; returns (ok, counterexamples)."""
    if l_max + r_max > 8:
        raise ValueError("comb_inequality_check: need l_max + r_max <= 8")
    elems = support_integers(n_max, y, z, max(l_max, r_max))
    counterexamples = []
    for n, l in elems:
        if l > l_max:
            continue
        bl = b_coefficient(n, l, y, z)
        for m, r in elems:
            if r > r_max:
                continue
            br = b_coefficient(m, r, y, z)
            lhs = b_coefficient(m * n, l + r, y, z)
            if lhs > math.comb(l + r, l) * bl * br:
                counterexamples.append((n, m, l, r))
    return len(counterexamples) == 0, counterexamples


def prime_square_identity_check(y, z, r, combo_cap=5 * 10**6):
    """Check sum_n b_r(n; y, z)/n^2 = (sum_{y<p<z} 1/p^2)^r exactly in
    floats; returns (lhs, rhs, ok at 1e-12 relative)."""
    if r < 0:
        raise ValueError("prime_square_identity_check: r must be >= 0")
    ps = [int(p) for p in primes.primes_between(y, z)]
    if r and math.comb(len(ps) + r - 1, r) > combo_cap:
        raise ValueError("prime_square_identity_check: combination count too large")
    if r == 0:
        return 1.0, 1.0, True
    terms = []
    for combo in combinations_with_replacement(ps, r):
        m = math.prod(combo)
        b = b_coefficient(m, r, y, z)
        terms.append(b / (m * m))
    lhs = math.fsum(terms)
    rhs = math.fsum(1.0 / (p * p) for p in ps) ** r
    scale = max(abs(lhs), abs(rhs), 1e-300)
    return lhs, rhs, abs(lhs - rhs) / scale <= 1e-12


def charsum_bound_census(q_max, samples_per_q=8):
    """For odd q <= q_max, the empirical constant in the character-sum
    bound: max over sampled x in [q^2, 4q^2] of |S(x)| q0 / x."""
    if q_max > 2000:
        raise ValueError("charsum_bound_census: q_max must be <= 2000")
    rows = []
    for q in range(1, q_max + 1, 2):
        q0 = arith.squarefree_decompose(q).squarefree_part
        prefix = arith.charsum_prefix(q)
        complete = int(prefix[q])
        best = 0.0
        lo, hi = q * q, 4 * q * q
        step = max(1, (hi - lo) // max(1, samples_per_q - 1))
        xs = list(range(lo, hi + 1, step))
        if xs[-1] != hi:
            xs.append(hi)
        for x in xs:
            k, rem = divmod(x, q)
            s = k * complete + int(prefix[rem])
            ratio = abs(s) * q0 / x
            if ratio > best:
                best = ratio
        rows.append(
            CharsumCensusRow(q, q0, complete, abs(complete) / q, best)
        )
    return rows


def squarefree_kernel_table(limit):
    """kern[v] = squarefree kernel of v for 0 <= v <= limit."""
    lpf = primes.shared_lpf(max(limit, 2))
    kern = np.zeros(limit + 1, dtype=np.int64)
    if limit >= 1:
        kern[1] = 1
    for v in range(2, limit + 1):
        p = int(lpf[v])
        w = v // p
        kern[v] = kern[w] // p if kern[w] % p == 0 else kern[w] * p
    return kern


def large_sieve_ratio(x, N, trials=8, seed=20260810):
    """Empirical LHS / RHS-skeleton ratios for the quadratic large sieve:
    LHS = sum over fundamental 0<d<x of (sum_{n<=N} a(n) chi_d(n))^2 with
    seeded a(n) in {-1, 0, 1}; RHS skeleton = (x+N) sum_{n1 n2 square}
    |a(n1) a(n2)| (no epsilon power).  Exploratory: no assertion."""
    x, N = int(x), int(N)
    if x > 10**4 or N > 10**4:
        raise ValueError("large_sieve_ratio: x and N must be <= 1e4")
    from . import lfun

    ds = lfun.fundamental_discriminants(x)
    lpf = primes.shared_lpf(max(N + 1, 2))
    chi_rows = [kernels.kronecker_table(int(d), N + 1, lpf) for d in ds]
    chi_mat = (
        np.vstack(chi_rows) if chi_rows else np.zeros((0, N + 1), dtype=np.int8)
    )
    kern = squarefree_kernel_table(N)
    rng = np.random.default_rng(seed)
    ratios = []
    for _ in range(trials):
        a = rng.integers(-1, 2, size=N + 1, dtype=np.int64)
        a[0] = 0
        if len(ds):
            # einsum avoids materializing an int64 copy of chi_mat
            sums = np.einsum("ij,j->i", chi_mat, a, dtype=np.int64)
        else:
            sums = np.zeros(0, np.int64)
        lhs = int(np.dot(sums, sums))
        weights = np.zeros(N + 1, dtype=np.int64)
        np.add.at(weights, kern[1:], np.abs(a[1:]))
        rhs = (x + N) * int(np.dot(weights, weights))
        ratios.append(lhs / rhs if rhs else 0.0)
    mx = max(ratios) if ratios else 0.0
    mean = sum(ratios) / len(ratios) if ratios else 0.0
    return SieveRatioReport(x, N, trials, seed, tuple(ratios), mx, mean)
