"""Pure-numpy fallback for the scaled oscillator-eigenfunction kernel.

Semantics match the compiled kernel in ``_hermite_cy``: for a fixed
quantum number ``n`` and a grid of positions, run the orthonormal
three-term recurrence

    psi_{k+1}(x) = x*sqrt(2/(k+1))*psi_k(x) - sqrt(k/(k+1))*psi_{k-1}(x)

seeded by psi_0(x) = pi^{-1/4} e^{-x^2/2}, carrying every value as
(mantissa in [1/2,1), base-2 exponent) and renormalising after each step
so nothing ever under- or overflows.
"""

from __future__ import annotations

import math

import numpy as np

from .._dd import (
    HALF_LOG2E_HI,
    HALF_LOG2E_LO,
    QUARTER_LOG2PI_HI,
    QUARTER_LOG2PI_LO,
)

_SPLIT = 134217729.0  # 2**27 + 1


def _two_prod(a, b):
    """Vectorised Dekker product: a*b = p + err exactly."""
    p = a * b
    ca = _SPLIT * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLIT * b
    bhi = cb - (cb - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def _seed(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Scaled psi_0: mantissa/exponent arrays for pi^{-1/4} e^{-x^2/2}.

    The base-2 logarithm is split into integer and fractional parts with
    compensated products so the seed keeps full relative accuracy even
    when x^2/2 is ~2000 (where a naive log2 would round at ~1e-13).
    """
    h, herr = _two_prod(x, x)
    p, perr = _two_prod(h, HALF_LOG2E_HI)
    corr = perr + h * HALF_LOG2E_LO + herr * HALF_LOG2E_HI

    e0 = np.floor(-p)
    frac = (-p - e0) - corr - QUARTER_LOG2PI_HI - QUARTER_LOG2PI_LO
    shift = np.floor(frac)
    e0 += shift
    frac -= shift
    m, de = np.frexp(np.exp2(frac))
    return m, e0.astype(np.int64) + de


def psi_scaled_grid(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Scaled psi_n on a grid: (mantissa, exponent) arrays.

    mantissa is 0.0 exactly at zeros of psi_n, with exponent 0 there.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    m, e = _seed(x)
    if n == 0:
        return m, e
    pm = np.zeros_like(m)
    pe = np.zeros_like(e)
    for k in range(n):
        c1 = math.sqrt(2.0 / (k + 1))
        c2 = math.sqrt(k / (k + 1.0))
        q = np.ldexp(pm, pe - e)
        r = c1 * x * m - c2 * q
        nm, de = np.frexp(r)
        pm, pe = m, e
        m = nm
        e = np.where(r == 0.0, e, e + de)
    e = np.where(m == 0.0, 0, e)
    return m, e.astype(np.int64)
