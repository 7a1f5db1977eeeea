"""Self-contained evaluators: Ai/Ai', gamma, log-gamma, erfc, Ai^2 moments.

Everything here is built from scratch (Maclaurin and asymptotic series,
Lanczos and Stirling approximations, a Lentz continued fraction) so the
package carries its own special-function layer instead of leaning on an
external library; the test suite cross-validates the two internal routes
wherever a function has them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _dd
from ._dd import dd_add, dd_div_d, dd_mul, dd_mul_d, dd_sqrt, two_prod
from .oscillator import ScaledValue

AIRY_SWITCH = 9.0  # Maclaurin pair below, exponentially-scaled asymptotics above

# Ai(0) and Ai'(0) as double-doubles
_AI0 = (0.3550280538878172, 2.05233632436212e-17)
_AIP0 = (-0.2588194037928068, 2.522243111610832e-17)

_SQRT_PI = 1.7724538509055159
_HALF_LN_2PI = 0.9189385332046727


class DomainError(ValueError):
    """Argument outside the supported domain."""


@dataclass(frozen=True)
class AiryPair:
    ai: float
    ai_prime: float


def _airy_series_dd(t: float) -> tuple[float, float]:
    """Maclaurin pair series for (Ai, Ai') in double-double arithmetic.

    The two basis series grow like e^{(2/3)t^{3/2}} while Ai decays, so
    ~10 digits cancel at t ~ 9; the doubled precision absorbs that.
    """
    th, tl = two_prod(t, t)
    x3h, x3l = dd_mul_d(th, tl, t)  # t^3 to ~1e-32

    tf = (1.0, 0.0)
    tg = (t, 0.0)
    tfp = (0.5 * th, 0.5 * tl)  # f' term of index 1: t^2/2
    tgp = (1.0, 0.0)
    sf, sg, sfp, sgp = tf, tg, tfp, tgp

    for k in range(0, 90):
        tf = dd_div_d(*dd_mul(*tf, x3h, x3l), (3 * k + 2) * (3 * k + 3))
        tg = dd_div_d(*dd_mul(*tg, x3h, x3l), (3 * k + 3) * (3 * k + 4))
        tgp = dd_div_d(*dd_mul(*tgp, x3h, x3l), (3 * k + 1) * (3 * k + 3))
        sf = dd_add(*sf, *tf)
        sg = dd_add(*sg, *tg)
        sgp = dd_add(*sgp, *tgp)
        if k >= 1:
            # f' terms use c_k = a_k*3k; index k+1 from index k (exact factors)
            tfp = dd_mul_d(*tfp, float(k + 1))
            tfp = dd_div_d(*dd_mul(*tfp, x3h, x3l), k * (3 * k + 2) * (3 * k + 3))
            sfp = dd_add(*sfp, *tfp)
        if abs(tf[0]) < 1e-36 * abs(sf[0]) and abs(tg[0]) < 1e-36 * max(abs(sg[0]), 1e-300):
            break

    ai = dd_add(*dd_mul(*_AI0, *sf), *dd_mul(*_AIP0, *sg))
    aip = dd_add(*dd_mul(*_AI0, *sfp), *dd_mul(*_AIP0, *sgp))
    return ai[0] + ai[1], aip[0] + aip[1]


def _airy_asymptotic_scaled(t: float) -> tuple[ScaledValue, ScaledValue]:
    """Scaled (Ai, Ai') for large t from the exponentially-scaled expansion."""
    sh, sl = dd_sqrt(t, 0.0)
    tsh, tsl = dd_mul(t, 0.0, sh, sl)
    xih, xil = dd_div_d(tsh, tsl, 1.5)  # (2/3) t^{3/2}
    lh, ll = _dd.log2_exp_neg(xih, xil)
    m_exp, e_exp = _dd.exp2_scaled(lh, ll)

    xi = xih
    s_ai = 1.0
    s_aip = 1.0
    u = 1.0
    term_prev = 1.0
    for k in range(0, 40):
        u_next = u * (6 * k + 1) * (6 * k + 5) / (72.0 * (k + 1))
        term = u_next / xi ** (k + 1)
        if term > term_prev:  # divergence onset
            break
        sign = -1.0 if (k + 1) % 2 else 1.0
        s_ai += sign * term
        v_next = -u_next * (6 * (k + 1) + 1) / (6 * (k + 1) - 1)
        s_aip += sign * v_next / xi ** (k + 1)
        u = u_next
        term_prev = term
        if term < 1e-18:
            break

    t4 = t ** 0.25
    ai = ScaledValue.from_float(m_exp * s_ai / (2.0 * _SQRT_PI * t4))
    aip = ScaledValue.from_float(-m_exp * t4 * s_aip / (2.0 * _SQRT_PI))
    return (
        ScaledValue(ai.mantissa, ai.exponent + e_exp),
        ScaledValue(aip.mantissa, aip.exponent + e_exp),
    )


def airy_scaled(t: float) -> tuple[ScaledValue, ScaledValue]:
    """(Ai(t), Ai'(t)) as ScaledValues, t >= 0.

    The scaled form stays meaningful far beyond the double underflow
    point (Ai(200) ~ 1e-819), which the uniform approximation needs.
    """
    if not t >= 0.0:
        raise DomainError(f"airy requires t >= 0, got {t}")
    if t <= AIRY_SWITCH:
        a, ap = _airy_series_dd(t)
        return ScaledValue.from_float(a), ScaledValue.from_float(ap)
    return _airy_asymptotic_scaled(t)


def airy(t: float) -> AiryPair:
    """Ai and Ai' at t >= 0 as doubles (underflowing beyond t ~ 108)."""
    a, ap = airy_scaled(t)
    return AiryPair(a.to_float(), ap.to_float())


# Gamma ---------------------------------------------------------------------

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# B_{2k} / (2k (2k-1)) for the Stirling tail
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
)


def _lanczos_sum(z: float) -> float:
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    return acc


def gamma(x: float) -> float:
    """Gamma(x) for x > 0 (Lanczos, with the recurrence below 1/2)."""
    if not x > 0.0:
        raise DomainError(f"gamma requires x > 0, got {x}")
    if x < 0.5:
        return gamma(x + 1.0) / x
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * _lanczos_sum(z)


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0; Stirling beyond 20 so huge arguments stay exact-ish."""
    if not x > 0.0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    if x > 20.0:
        acc = 0.0
        xk = x
        x2 = x * x
        for c in _STIRLING:
            acc += c / xk
            xk *= x2
        return (x - 0.5) * math.log(x) - x + _HALF_LN_2PI + acc
    if x < 0.5:
        return log_gamma(x + 1.0) - math.log(x)
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return _HALF_LN_2PI + (z + 0.5) * math.log(t) - t + math.log(_lanczos_sum(z))


# erfc ------------------------------------------------------------------------

_ERFC_SWITCH = 1.5


def _erfc_series(x: float) -> float:
    # 1 - (2/sqrt(pi)) * sum (-1)^k x^{2k+1} / (k! (2k+1))
    term = x
    acc = x
    x2 = x * x
    for k in range(1, 80):
        term *= -x2 / k
        acc += term / (2 * k + 1)
        if abs(term) < 1e-18 * abs(acc):
            break
    return 1.0 - 2.0 / _SQRT_PI * acc


def _erfc_cf(x: float) -> float:
    # erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    tiny = 1e-300
    f = x if x != 0.0 else tiny
    c = f
    d = 0.0
    for k in range(1, 200):
        a = 0.5 * k
        d = x + a * d
        if d == 0.0:
            d = tiny
        c = x + a / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-17:
            break
    hh, hl = two_prod(x, x)
    lh, ll = _dd.log2_exp_neg(hh, hl)
    m, e = _dd.exp2_scaled(lh, ll)
    return math.ldexp(m / (_SQRT_PI * f), e)


def erfc(x: float) -> float:
    """Complementary error function by dual evaluation (series / continued fraction)."""
    if x < 0.0:
        return 2.0 - erfc(-x)
    if x <= _ERFC_SWITCH:
        return _erfc_series(x)
    return _erfc_cf(x)


# Airy-squared moments --------------------------------------------------------


def ai_squared_moment(m: int) -> float:
    """Closed form for the integral of t^m Ai^2(t) over [0, inf)."""
    if m < 0:
        raise DomainError(f"moment order must be >= 0, got {m}")
    return (
        2.0
        * math.factorial(m)
        * 12.0 ** (-(m / 3.0 + 7.0 / 6.0))
        / (_SQRT_PI * gamma(m / 3.0 + 7.0 / 6.0))
    )
