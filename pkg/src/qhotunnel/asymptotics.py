"""Turning-point map, uniform wavefunction approximation, and the closed
large-n tunnelling-probability expansions.

Positions are scaled so the turning point sits at x = 1 (physical
position nu*x).  The map zeta(x) straightens the turning point to
zeta = 0; phi, b0, a1 are the coefficient functions of the Airy-type
approximation.  Near zeta = 0 all of them are evaluated from the exact
series of the series module (their closed forms are 0/0 there); away
from it the closed forms are used directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import quadrature as _quadrature
from ._dd import two_sum
from .oscillator import OscillatorMode, ScaledValue
from .series import (
    derive_a1_series,
    derive_b0_series,
    derive_inversion_series,
    derive_phi_series,
    derive_zeta_series,
)
from .specialfn import DomainError, airy_scaled, gamma, log_gamma

_X_SERIES_DELTA = 0.05   # closed form for x >= 1 + delta, series below
_ZETA_SWITCH = 0.1       # same idea for phi/b0/a1
_SERIES_ORDER = 13

_SQRT_PI = 1.7724538509055159
_GAMMA_THIRD = 2.6789385347077475    # Gamma(1/3)
_GAMMA_2THIRDS = 1.3541179394264005  # Gamma(2/3)

FORMS = ("eq41", "eq42", "numeric42", "jadczyk13")


@dataclass(frozen=True)
class ZetaPoint:
    x: float
    zeta: float


@dataclass(frozen=True)
class ExpansionResult:
    """Evaluated asymptotic expansion with its per-order breakdown."""

    value: float
    terms: tuple[tuple[str, float], ...]
    last_term_estimate: float


@lru_cache(maxsize=None)
def _zeta_u_coeffs() -> tuple[float, ...]:
    return tuple(derive_zeta_series(_SERIES_ORDER).float_coeffs())


@lru_cache(maxsize=None)
def _x_zeta_coeffs() -> tuple[float, ...]:
    return tuple(derive_inversion_series(_SERIES_ORDER).float_coeffs())


@lru_cache(maxsize=None)
def _phi_coeffs() -> tuple[float, ...]:
    return tuple(derive_phi_series(_SERIES_ORDER).float_coeffs())


@lru_cache(maxsize=None)
def _b0_coeffs() -> tuple[float, ...]:
    return tuple(derive_b0_series(_SERIES_ORDER).float_coeffs())


@lru_cache(maxsize=None)
def _a1_coeffs() -> tuple[float, ...]:
    return tuple(derive_a1_series(_SERIES_ORDER).float_coeffs())


def _horner(coeffs, z: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _zeta32_closed(x: float) -> float:
    """(3/4)(x sqrt(x^2-1) - arccosh x) = zeta^{3/2}, for x >= 1."""
    w = math.sqrt((x - 1.0) * (x + 1.0))
    return 0.75 * (x * w - math.acosh(x))


def zeta_of_x(x: float) -> ZetaPoint:
    """Turning-point map; monotone, zeta(1) = 0."""
    if not x >= 1.0:
        raise DomainError(f"the map is defined for x >= 1, got {x}")
    if x < 1.0 + _X_SERIES_DELTA:
        zeta = _horner(_zeta_u_coeffs(), x - 1.0) if x > 1.0 else 0.0
    else:
        zeta = _zeta32_closed(x) ** (2.0 / 3.0)
    return ZetaPoint(x, zeta)


def x_of_zeta(zeta: float) -> ZetaPoint:
    """Inverse map via Newton on the closed form (series start for small zeta)."""
    if not zeta >= 0.0:
        raise DomainError(f"the inverse map is defined for zeta >= 0, got {zeta}")
    x = _horner(_x_zeta_coeffs(), zeta)
    if zeta < 0.06:
        return ZetaPoint(x, zeta)
    if zeta > 1.5 or x <= 1.0:
        # large-zeta start: zeta^{3/2} ~ (3/4) x^2 for x >> 1
        x = max(x, math.sqrt(4.0 / 3.0 * zeta**1.5 + 1.0))
    target = zeta**1.5
    for _ in range(60):
        f = _zeta32_closed(x) - target
        df = 1.5 * math.sqrt((x - 1.0) * (x + 1.0))
        step = f / df
        x -= step
        if x <= 1.0:
            x = 1.0 + 1e-15
        if abs(step) <= 1e-15 * x:
            break
    return ZetaPoint(x, zeta)


def phi(zeta: float) -> float:
    """phi(zeta) = zeta/(x^2 - 1); regular and positive, phi(0) = 2^{-2/3}."""
    if zeta < _ZETA_SWITCH:
        return _horner(_phi_coeffs(), zeta)
    x = x_of_zeta(zeta).x
    return zeta / ((x - 1.0) * (x + 1.0))


def b0(zeta: float) -> float:
    """First Ai'-channel coefficient function (negative, vanishing at infinity)."""
    if zeta < _ZETA_SWITCH:
        return _horner(_b0_coeffs(), zeta)
    x = x_of_zeta(zeta).x
    w2 = (x - 1.0) * (x + 1.0)
    return -0.5 / math.sqrt(zeta) * (x * (x * x - 6.0) / (12.0 * w2**1.5) + 5.0 / (24.0 * zeta**1.5))


def a1(zeta: float) -> float:
    """Second Ai-channel coefficient function; the three pole pieces cancel."""
    if zeta < _ZETA_SWITCH:
        return _horner(_a1_coeffs(), zeta)
    x = x_of_zeta(zeta).x
    x2 = x * x
    w2 = (x - 1.0) * (x + 1.0)
    z32 = zeta**1.5
    return (
        (145.0 + 249.0 * x2 - 9.0 * x2 * x2) / w2**3
        - 7.0 * x * (x2 - 6.0) / (w2**1.5 * z32)
        - 455.0 / (4.0 * z32 * z32)
    ) / 1152.0


# ---------------------------------------------------------------------------
# Uniform approximation of psi_n
# ---------------------------------------------------------------------------


def _log_norm_prefactor(n: int, nu: float) -> float:
    """ln of the prefactor tying the Airy form to the normalised psi_n.

    The terms are each ~n ln n and cancel to O(ln nu); they are summed
    with exact-compensation so no digits are lost at n ~ 1000.
    """
    terms = (
        -0.25 * math.log(math.pi),
        0.5 * (n + 1) * math.log(2.0),
        0.5 * log_gamma(n + 1.0),
        0.25 * (2 * n + 1),
        -(n + 2.0 / 3.0) * math.log(nu),
    )
    s = 0.0
    comp = 0.0
    for t in terms:
        s, e = two_sum(s, t)
        comp += e
    return s + comp


def uniform_psi_approx(
    mode: OscillatorMode,
    x_scaled: float,
    f_orders: int = 3,
    g_orders: int = 2,
) -> ScaledValue:
    """Airy-type approximation to psi_n(nu * x_scaled), x_scaled >= 1.

    f_orders counts retained F-coefficients (max 3: 1, 1/24, a1+1/576);
    g_orders counts retained G-coefficients (max 2: b0, b0/24).
    """
    if not x_scaled >= 1.0:
        raise DomainError(f"uniform approximation needs x_scaled >= 1, got {x_scaled}")
    if not 1 <= f_orders <= 3:
        raise ValueError("f_orders must be 1..3 (printed coefficients only)")
    if not 0 <= g_orders <= 2:
        raise ValueError("g_orders must be 0..2 (printed coefficients only)")
    n, nu = mode.n, mode.nu
    zeta = zeta_of_x(x_scaled).zeta
    nu2 = nu * nu

    fs = [1.0, 1.0 / 24.0, a1(zeta) + 1.0 / 576.0][:f_orders]
    F = sum(c * nu2**-k for k, c in enumerate(fs))
    gs = [b0(zeta), b0(zeta) / 24.0][:g_orders]
    G = sum(c * nu2**-k for k, c in enumerate(gs))

    t = nu ** (4.0 / 3.0) * zeta
    ai, aip = airy_scaled(t)
    # Upsilon = Ai(t) F + nu^{-8/3} Ai'(t) G, combined on Ai's exponent
    de = aip.exponent - ai.exponent
    ups = ai.mantissa * F
    if g_orders and aip.mantissa != 0.0:
        ups += math.ldexp(aip.mantissa, max(min(de, 1000), -1000)) * nu ** (-8.0 / 3.0) * G

    ln_c = _log_norm_prefactor(n, nu)
    m_c, e_c = _exp_scaled(ln_c)
    amp = m_c * phi(zeta) ** 0.25 * ups
    out = ScaledValue.from_float(amp)
    if out.mantissa == 0.0:
        return out
    return ScaledValue(out.mantissa, out.exponent + e_c + ai.exponent)


def _exp_scaled(ln_value: float) -> tuple[float, int]:
    """e^{ln_value} as (mantissa, base-2 exponent), immune to over/underflow."""
    l2 = ln_value / math.log(2.0)
    e = math.floor(l2)
    return 2.0 ** (l2 - e), int(e)


# ---------------------------------------------------------------------------
# Asymptotics of the two density integrals
# ---------------------------------------------------------------------------


def integral_phi_ai2_asym(nu: float, M: int) -> ExpansionResult:
    """Watson expansion of the integral of phi(zeta) Ai^2(nu^{4/3} zeta)."""
    if not 1 <= M <= 5:
        raise ValueError("M must be 1..5")
    alphas = _phi_coeffs()
    terms = []
    for m in range(M):
        c = (
            2.0
            / _SQRT_PI
            * alphas[m]
            * math.factorial(m)
            / (12.0 ** (m / 3.0 + 7.0 / 6.0) * gamma(m / 3.0 + 7.0 / 6.0))
        )
        p = -4.0 * m / 3.0 - 4.0 / 3.0
        terms.append((_nu_label(p), c * nu**p))
    value = math.fsum(v for _, v in terms)
    return ExpansionResult(value, tuple(terms), abs(terms[-1][1]))


def integral_phib0_dai2_asym(nu: float, M: int) -> ExpansionResult:
    """Watson expansion of the integral of phi b0 [Ai^2]'(nu^{4/3} zeta).

    [Ai^2]' means 2 Ai Ai' evaluated at the stretched argument.  The
    leading term is the boundary contribution at zeta = 0.
    """
    if not 1 <= M <= 4:
        raise ValueError("M must be 1..4")
    betas = _beta_coeffs()
    terms = [(_nu_label(-4.0 / 3.0), betas[0] * (3.0 * nu) ** (-4.0 / 3.0) / _GAMMA_2THIRDS**2)]
    for m in range(1, M):
        c = (
            2.0
            / _SQRT_PI
            * betas[m]
            * math.factorial(m)
            / (12.0 ** (m / 3.0 + 5.0 / 6.0) * gamma(m / 3.0 + 5.0 / 6.0))
        )
        p = -4.0 * m / 3.0 - 4.0 / 3.0
        terms.append((_nu_label(p), c * nu**p))
    value = math.fsum(v for _, v in terms)
    return ExpansionResult(value, tuple(terms), abs(terms[-1][1]))


@lru_cache(maxsize=None)
def _beta_coeffs() -> tuple[float, ...]:
    from .series import derive_beta_series

    return tuple(derive_beta_series(_SERIES_ORDER).float_coeffs())


def _nu_label(p: float) -> str:
    if p == 0.0:
        return "nu^0"
    num = round(p * 3)
    if num % 3 == 0:
        return f"nu^({num // 3})"
    return f"nu^({num}/3)"


# ---------------------------------------------------------------------------
# Closed tunnelling-probability expansions
# ---------------------------------------------------------------------------


def tunnel_probability_asym(mode: OscillatorMode, form: str = "eq42") -> ExpansionResult:
    """Closed asymptotic value of the tunnelling probability for state n.

    Forms: 'eq41' keeps the exact gamma-function prefactor (assembled in
    log space); 'eq42' is the fully expanded power form; 'numeric42' the
    same with the decimal coefficients; 'jadczyk13' the two-term
    comparison form in powers of n.
    """
    n, nu = mode.n, mode.nu
    if form not in FORMS:
        raise ValueError(f"unknown form {form!r}; choose from {FORMS}")
    if n < 1:
        raise DomainError("the closed expansions need n >= 1")
    nu2 = nu * nu
    g13sq = _GAMMA_THIRD**2
    g23sq = _GAMMA_2THIRDS**2

    if form == "jadczyk13":
        pre = n ** (-1.0 / 3.0)
        t0 = pre * 0.133975
        t1 = pre * (-0.0122518) * n ** (-2.0 / 3.0)
        return ExpansionResult(t0 + t1, (("n^0", t0), ("n^(-2/3)", t1)), abs(t1))

    if form == "eq41":
        pre = math.exp(_eq41_log_prefactor(n, nu))
        b0c = 6.0 ** (-2.0 / 3.0) / g13sq
        b1c = -1.0 / (30.0 * math.pi * math.sqrt(3.0))
        a2 = 4.0 / 525.0 * 6.0 ** (-1.0 / 3.0) / g23sq
        a3 = -16.0 / 525.0 * 6.0 ** (-2.0 / 3.0) / g13sq
        c0 = 3.0 / 280.0 * 6.0 ** (-1.0 / 3.0) / g23sq
        c1 = -179.0 / 6300.0 * 6.0 ** (-2.0 / 3.0) / g13sq
        w = 1.0 + 1.0 / (12.0 * nu2) - 29.0 / (2400.0 * nu2 * nu2)
        group1 = w * (b0c + b1c * nu ** (-4.0 / 3.0) + a2 * nu ** (-8.0 / 3.0) + a3 / (nu2 * nu2))
        group2 = nu ** (-8.0 / 3.0) * (1.0 + 1.0 / (12.0 * nu2)) * (c0 + c1 * nu ** (-4.0 / 3.0))
        value = pre * (group1 + group2)
        terms = _power_terms_eq41(pre, nu, b0c, b1c, a2, a3, c0, c1, value)
        return ExpansionResult(value, terms, abs(terms[-1][1]))

    if form == "eq42":
        pre = 2.0 ** (5.0 / 3.0) * n ** (-1.0 / 3.0)
        b = (
            6.0 ** (-2.0 / 3.0) / g13sq,
            -1.0 / (30.0 * math.pi * math.sqrt(3.0)),
            11.0 / 600.0 * 6.0 ** (-1.0 / 3.0) / g23sq,
            -167.0 / 900.0 * 6.0 ** (-2.0 / 3.0) / g13sq,
        )
    else:  # numeric42
        pre = n ** (-1.0 / 3.0)
        # decimal insertion of the eq42 coefficients; the nu^{-8/3} entry is
        # positive (it equals 2^{5/3} * 11/600 * 6^{-1/3} / Gamma(2/3)^2)
        b = (0.1339750, -0.0194484, 0.0174687, -0.0248598)

    w = -1.0 / 3.0
    t = (
        ("nu^0", pre * b[0]),
        ("nu^(-4/3)", pre * b[1] * nu ** (-4.0 / 3.0)),
        ("nu^(-2)", pre * w * b[0] / nu2),
        ("nu^(-8/3)", pre * b[2] * nu ** (-8.0 / 3.0)),
        ("nu^(-10/3)", pre * w * b[1] * nu ** (-10.0 / 3.0)),
        ("nu^(-4)", pre * b[3] / (nu2 * nu2)),
        ("nu^(-14/3)", pre * w * b[2] * nu ** (-14.0 / 3.0)),
    )
    value = math.fsum(v for _, v in t)
    return ExpansionResult(value, t, abs(t[-1][1]))


def _eq41_log_prefactor(n: int, nu: float) -> float:
    """ln[2^{n+2} n! e^{n+1/2} / (sqrt(pi) nu^{2n+5/3})], compensated."""
    terms = (
        (n + 2) * math.log(2.0),
        log_gamma(n + 1.0),
        n + 0.5,
        -0.5 * math.log(math.pi),
        -(2 * n + 5.0 / 3.0) * math.log(nu),
    )
    s = 0.0
    comp = 0.0
    for v in terms:
        s, e = two_sum(s, v)
        comp += e
    return s + comp


def _power_terms_eq41(pre, nu, b0c, b1c, a2, a3, c0, c1, value):
    nu2 = nu * nu
    w = 1.0 / 12.0
    t = [
        ("nu^0", pre * b0c),
        ("nu^(-4/3)", pre * b1c * nu ** (-4.0 / 3.0)),
        ("nu^(-2)", pre * w * b0c / nu2),
        ("nu^(-8/3)", pre * (a2 + c0) * nu ** (-8.0 / 3.0)),
        ("nu^(-10/3)", pre * w * b1c * nu ** (-10.0 / 3.0)),
        ("nu^(-4)", pre * (a3 - 29.0 / 2400.0 * b0c) / (nu2 * nu2)),
        ("nu^(-14/3)", pre * (w * (a2 + c0) + c1) * nu ** (-14.0 / 3.0)),
    ]
    residual = value - math.fsum(v for _, v in t)
    t.append(("nu^(-16/3)", residual))
    return tuple(t)


# ---------------------------------------------------------------------------
# Oracle-versus-expansion table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TableRow:
    n: int
    p_exact: float
    p_asym: float
    rel_error: float


def relative_error_table(ns, tol: float = 1e-13, form: str = "eq42") -> list[TableRow]:
    """One row per n: oracle value, closed expansion, relative deviation."""
    rows = []
    for n in ns:
        mode = OscillatorMode(n)
        p_exact = _quadrature.tunnel_probability_exact(mode, tol)
        p_asym = tunnel_probability_asym(mode, form).value
        rows.append(TableRow(n, p_exact, p_asym, abs(p_exact - p_asym) / p_exact))
    return rows
