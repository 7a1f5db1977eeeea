"""Compensated (double-double) arithmetic helpers.

A double-double is a pair ``(hi, lo)`` with ``value == hi + lo`` and
``|lo| <= ulp(hi)/2``, giving roughly 32 significant digits.  Only the
handful of operations this package needs are implemented.  They are used
where plain doubles lose too many digits: the Maclaurin branch of the
Airy evaluator (exponential cancellation between the two basis series)
and base-2 exponent splitting of quantities like e^{-x^2/2} whose
logarithm is far larger than 1.
"""

from __future__ import annotations

import math

_SPLIT = 134217729.0  # 2**27 + 1, Dekker splitter for binary64


def two_sum(a: float, b: float) -> tuple[float, float]:
    """Exact sum: a + b = s + e with s = fl(a+b)."""
    s = a + b
    t = s - a
    e = (a - (s - t)) + (b - t)
    return s, e


def fast_two_sum(a: float, b: float) -> tuple[float, float]:
    """Exact sum assuming |a| >= |b|."""
    s = a + b
    e = b - (s - a)
    return s, e


def two_prod(a: float, b: float) -> tuple[float, float]:
    """Exact product: a * b = p + e with p = fl(a*b)."""
    p = a * b
    ca = _SPLIT * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLIT * b
    bhi = cb - (cb - b)
    blo = b - bhi
    e = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, e


def dd_add(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    s, e = two_sum(xh, yh)
    e += xl + yl
    return fast_two_sum(s, e)


def dd_mul(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    p, e = two_prod(xh, yh)
    e += xh * yl + xl * yh
    return fast_two_sum(p, e)


def dd_mul_d(xh: float, xl: float, y: float) -> tuple[float, float]:
    p, e = two_prod(xh, y)
    e += xl * y
    return fast_two_sum(p, e)


def dd_div_d(xh: float, xl: float, y: float) -> tuple[float, float]:
    q1 = xh / y
    ph, pl = two_prod(q1, y)
    rh = xh - ph
    rl = xl - pl
    q2 = (rh + rl) / y
    return fast_two_sum(q1, q2)


def dd_sqrt(xh: float, xl: float) -> tuple[float, float]:
    if xh == 0.0:
        return 0.0, 0.0
    q = math.sqrt(xh)
    ph, pl = two_prod(q, q)
    rh = xh - ph
    rl = xl - pl
    q2 = (rh + rl) / (2.0 * q)
    return fast_two_sum(q, q2)


# Base-2 exponent splitting ------------------------------------------------

HALF_LOG2E_HI = 0.7213475204444817       # 1/(2 ln 2)
HALF_LOG2E_LO = 1.0177636870465517e-17
LOG2E_HI = 1.4426950408889634            # 1/ln 2
LOG2E_LO = 2.0355273740931033e-17
QUARTER_LOG2PI_HI = 0.4128740323680797   # log2(pi)/4
QUARTER_LOG2PI_LO = 1.9744082879119833e-17


def exp2_scaled(lh: float, ll: float) -> tuple[float, int]:
    """2**(lh+ll) as (mantissa in [1/2,1), exponent), no range limit.

    The integer part of the exponent is peeled off exactly so accuracy
    does not degrade when |lh| is large (the fractional part is what
    matters and it is carried to ~1e-17).
    """
    e = math.floor(lh)
    f = (lh - e) + ll  # lh - e is exact for |lh| < 2**52
    if f >= 1.0:
        f -= 1.0
        e += 1
    elif f < 0.0:
        f += 1.0
        e -= 1
    m = math.exp2(f) if hasattr(math, "exp2") else 2.0 ** f
    # m in [1, 2): shift into [1/2, 1)
    return 0.5 * m, int(e) + 1


def log2_exp_neg(xh: float, xl: float) -> tuple[float, float]:
    """log2(e^{-(xh+xl)}) as a double-double."""
    ph, pl = two_prod(xh, LOG2E_HI)
    pl += xh * LOG2E_LO + xl * LOG2E_HI
    return -ph, -pl
