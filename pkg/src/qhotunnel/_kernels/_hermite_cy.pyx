# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for the scaled oscillator-eigenfunction recurrence.

Same contract as the pure-Python twin in ``_hermite_py``: see there for
the algorithm.  This version runs the recurrence point-major in C.
"""

from libc.math cimport floor, frexp, ldexp, sqrt, exp2

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef double _SPLIT = 134217729.0  # 2**27 + 1

cdef double HALF_LOG2E_HI = 0.7213475204444817
cdef double HALF_LOG2E_LO = 1.0177636870465517e-17
cdef double QUARTER_LOG2PI_HI = 0.4128740323680797
cdef double QUARTER_LOG2PI_LO = 1.9744082879119833e-17


cdef inline double _two_prod(double a, double b, double *err) nogil:
    cdef double p = a * b
    cdef double ca = _SPLIT * a
    cdef double ahi = ca - (ca - a)
    cdef double alo = a - ahi
    cdef double cb = _SPLIT * b
    cdef double bhi = cb - (cb - b)
    cdef double blo = b - bhi
    err[0] = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p


def psi_scaled_grid(long n, cnp.ndarray[cnp.float64_t, ndim=1] x):
    """Scaled psi_n on a grid: (mantissa, exponent) arrays."""
    cdef Py_ssize_t npts = x.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] mant = np.empty(npts, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] expo = np.empty(npts, dtype=np.int64)

    # recurrence coefficients, shared across points
    cdef cnp.ndarray[cnp.float64_t, ndim=1] c1a = np.empty(max(n, 1), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] c2a = np.empty(max(n, 1), dtype=np.float64)
    cdef long k
    for k in range(n):
        c1a[k] = sqrt(2.0 / (k + 1))
        c2a[k] = sqrt(k / (k + 1.0))

    cdef Py_ssize_t j
    cdef double xv, h, herr, p, perr, corr, e0, frac, shift, m, q, r, nm
    cdef long e, pe, de_l
    cdef double pm
    cdef int de

    with nogil:
        for j in range(npts):
            xv = x[j]
            # seed: log2(pi^{-1/4} e^{-xv^2/2}) split into int + frac
            h = _two_prod(xv, xv, &herr)
            p = _two_prod(h, HALF_LOG2E_HI, &perr)
            corr = perr + h * HALF_LOG2E_LO + herr * HALF_LOG2E_HI
            e0 = floor(-p)
            frac = (-p - e0) - corr - QUARTER_LOG2PI_HI - QUARTER_LOG2PI_LO
            shift = floor(frac)
            e0 += shift
            frac -= shift
            m = frexp(exp2(frac), &de)
            e = <long>e0 + de

            pm = 0.0
            pe = 0
            for k in range(n):
                q = ldexp(pm, <int>(pe - e))
                r = c1a[k] * xv * m - c2a[k] * q
                nm = frexp(r, &de)
                pm = m
                pe = e
                m = nm
                if r != 0.0:
                    e = e + de
                # r == 0: keep previous exponent so the next rescale stays sane

            if m == 0.0:
                e = 0
            mant[j] = m
            expo[j] = e

    return mant, expo
