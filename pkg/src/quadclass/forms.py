"""Reduced indefinite binary quadratic forms and class numbers.

Class numbers are computed two independent ways: combinatorially, as the
number of reduction cycles of indefinite forms (the narrow class number,
corrected by the norm of the fundamental unit), and analytically from
the value L(1, chi_d).  ``class_number`` cross-checks the two.
"""

import math
from dataclasses import dataclass

from . import arith, lfun, pell, primes
from .errors import ConsistencyError

# conjectured limsup of the extremal statistic: 2 * exp(euler gamma)
EXTREME_REFERENCE = 2.0 * math.exp(0.5772156649015328606)


@dataclass(frozen=True)
class IndefiniteForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self):
        return self.b * self.b - 4 * self.a * self.c

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c


@dataclass(frozen=True)
class ClassNumberRecord:
    d: int
    narrow_h: int
    h: int
    norm_sign: int
    h_analytic: float
    regulator: float


def _check_disc(f):
    disc = f.discriminant
    if disc <= 0 or math.isqrt(disc) ** 2 == disc:
        raise ValueError(
            f"form {tuple(f)} has discriminant {disc}; need positive non-square"
        )
    return disc


def is_reduced(f):
    """0 < b < sqrt(d) and sqrt(d) - b < 2|a| < sqrt(d) + b, exactly."""
    disc = _check_disc(f)
    b = f.b
    if b <= 0 or b * b >= disc:
        return False
    ta = 2 * abs(f.a)
    if (ta + b) ** 2 <= disc:
        return False
    if ta > b and (ta - b) ** 2 >= disc:
        return False
    return True


def rho_step(f):
    """One reduction step (a, b, c) -> (c, b', c') with b' = -b mod 2|c|
    chosen in the reduction window."""
    disc = _check_disc(f)
    c = f.c
    if c == 0:
        raise ValueError("rho_step: form has c = 0")
    ac = abs(c)
    s = math.isqrt(disc)
    if ac <= s:
        bp = s - (s + f.b) % (2 * ac)
    else:
        bp = (-f.b) % (2 * ac)
        if bp > ac:
            bp -= 2 * ac
    cp = (bp * bp - disc) // (4 * c)
    return IndefiniteForm(c, bp, cp)


def reduce_form(f, max_steps=10000):
    """Reduced form equivalent to f, by repeated rho steps."""
    disc = _check_disc(f)
    for _ in range(max_steps):
        if is_reduced(f):
            return f
        f = rho_step(f)
        if f.discriminant != disc:
            raise ConsistencyError("rho step changed the discriminant")
    raise ConsistencyError(f"reduction did not terminate for {tuple(f)}")


def principal_form(d):
    """The principal form of discriminant d (d = 0 or 1 mod 4)."""
    k = d % 2
    return IndefiniteForm(1, k, (k * k - d) // 4)


def reduced_forms(d):
    """All reduced forms of positive non-square discriminant d = 0,1 mod 4."""
    if d <= 0 or d % 4 not in (0, 1):
        raise ValueError("reduced_forms: d must be positive and 0 or 1 mod 4")
    s = math.isqrt(d)
    if s * s == d:
        raise ValueError("reduced_forms: d must not be a square")
    lpf = primes.shared_lpf(max(d // 4, 2))
    forms = []
    b = 2 - (d % 2)
    while b <= s:
        n = (d - b * b) // 4
        for a in arith.factorize(n, lpf).divisors():
            # window sqrt(d) - b < 2a < sqrt(d) + b, checked exactly
            if (2 * a + b) ** 2 > d and (2 * a <= b or (2 * a - b) ** 2 < d):
                forms.append(IndefiniteForm(a, b, -(n // a)))
                forms.append(IndefiniteForm(-a, b, n // a))
        b += 2
    forms.sort(key=lambda f: (f.b, f.a))
    return forms


def cycle_partition(d):
    """Partition the reduced forms of discriminant d into rho cycles."""
    forms = reduced_forms(d)
    form_set = set((f.a, f.b, f.c) for f in forms)
    seen = set()
    cycles = []
    for f in forms:
        key = (f.a, f.b, f.c)
        if key in seen:
            continue
        cycle = []
        g = f
        while True:
            gk = (g.a, g.b, g.c)
            if gk in seen:
                raise ConsistencyError(f"rho cycles overlap at {gk} (d={d})")
            if gk not in form_set:
                raise ConsistencyError(f"rho left the reduced set at {gk} (d={d})")
            seen.add(gk)
            cycle.append(g)
            g = rho_step(g)
            if (g.a, g.b, g.c) == key:
                break
        cycles.append(cycle)
    return cycles


def narrow_class_number(d):
    """Number of rho cycles of reduced forms = narrow class number."""
    return len(cycle_partition(d))


def class_number(d, formula_scale=0.5):
    """Class number of the field of fundamental discriminant d, with the
    analytic value h_analytic = formula_scale * sqrt(d) L(1,chi_d) / R_d.

    The rounded analytic value must match the cycle count exactly and lie
    within 0.01 of an integer; a mismatch raises ConsistencyError (with
    the default scale that signals a bug, not bad input).
    """
    if not arith.is_fundamental_discriminant(d):
        raise ValueError(f"class_number: {d} is not a fundamental discriminant")
    narrow = narrow_class_number(d)
    unit = pell.fundamental_unit(d)
    if unit.norm_sign == -1:
        h = narrow
    else:
        if narrow % 2:
            raise ConsistencyError(
                f"d={d}: unit norm +1 needs an even narrow class number, got {narrow}"
            )
        h = narrow // 2
    lval = lfun.l_exact(d)
    h_analytic = formula_scale * math.sqrt(d) * lval / unit.regulator
    if abs(h_analytic - round(h_analytic)) > 0.01 or round(h_analytic) != h:
        raise ConsistencyError(
            f"d={d}: analytic class number {h_analytic:.6f} (scale "
            f"{formula_scale}) does not match cycle count {h}"
        )
    return ClassNumberRecord(d, narrow, h, unit.norm_sign, h_analytic, unit.regulator)


def extremal_statistic(d, h=None):
    """h(d) log d / (sqrt(d) loglog d), the quantity whose conjectured
    limsup is EXTREME_REFERENCE."""
    if d < 3:
        raise ValueError("extremal_statistic: need loglog d > 0, so d >= 3")
    ll = math.log(math.log(d))
    if ll <= 0:
        raise ValueError("extremal_statistic: need loglog d > 0")
    if h is None:
        h = class_number(d).h
    return h * math.log(d) / (math.sqrt(d) * ll)
