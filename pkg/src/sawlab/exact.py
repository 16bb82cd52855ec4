"""Exact comparisons between rationals and products of rational powers.

Thresholds such as ``n ** -alpha`` are irrational in general, but with a
rational exponent ``p/q`` the comparison ``a > n ** (p/q)`` is decided
exactly by ``a ** q > n ** p``.  When the common denominator gets too large
for that to be cheap we compare logarithms in mpmath, raising the precision
until the sign is clear.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .errors import AmbiguousComparison, InvalidParams

MAX_EXACT_DENOMINATOR = 4096
GUARD_BAND = 1e-12

Factor = tuple[Fraction, Fraction]


def rational(x) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float.

    Floats go through their shortest repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise InvalidParams(f"non-finite value {x}")
        return Fraction(repr(x))
    try:
        return Fraction(str(x).strip())
    except (ValueError, ZeroDivisionError):
        raise InvalidParams(f"not a number: {x!r}") from None


def _prepare(factors: Iterable[Sequence]) -> list[Factor]:
    out = []
    for f in factors:
        if len(f) == 1:
            base, exp = f[0], 1
        else:
            base, exp = f
        base, exp = rational(base), rational(exp)
        if base < 0:
            raise InvalidParams("bases must be non-negative")
        out.append((base, exp))
    return out


def power_cmp(left, right) -> int:
    """Sign of ``prod(b**e for b, e in left) - prod(b**e for b, e in right)``.

    Each side is a sequence of ``(base, exponent)`` pairs with non-negative
    bases.  A zero base with a non-positive exponent is rejected.
    """
    lf, rf = _prepare(left), _prepare(right)
    for base, exp in lf + rf:
        if base == 0 and exp <= 0:
            raise InvalidParams("zero base needs a positive exponent")
    lzero = any(b == 0 for b, _ in lf)
    rzero = any(b == 0 for b, _ in rf)
    if lzero or rzero:
        return (not lzero) - (not rzero)
    den = 1
    for _, e in lf + rf:
        den = den * e.denominator // math.gcd(den, e.denominator)
    if den <= MAX_EXACT_DENOMINATOR:
        lv = math.prod((b ** int(e * den) for b, e in lf), start=Fraction(1))
        rv = math.prod((b ** int(e * den) for b, e in rf), start=Fraction(1))
        return (lv > rv) - (lv < rv)
    # compare logarithms, raising the precision until the sign is clear
    for dps in (60, 250, 1000):
        with mpmath.workdps(dps):
            diff = sum(_e_log(b, e) for b, e in lf) - sum(_e_log(b, e) for b, e in rf)
            if abs(diff) > mpmath.mpf(10) ** (10 - dps):
                return 1 if diff > 0 else -1
    raise AmbiguousComparison("sides agree to 990 digits")


def _e_log(base: Fraction, exp: Fraction):
    return mpmath.mpf(exp.numerator) / exp.denominator * mpmath.log(
        mpmath.mpf(base.numerator) / base.denominator
    )


def floor_root_product(coeff, k: int) -> int:
    """``floor(coeff * sqrt(k))`` computed exactly for rational ``coeff >= 0``."""
    c = rational(coeff)
    if c < 0 or k < 0:
        raise InvalidParams("need coeff >= 0 and k >= 0")
    v = c * c * k
    return math.isqrt(v.numerator * v.denominator) // v.denominator


def to_mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator
