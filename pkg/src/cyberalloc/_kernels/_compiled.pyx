# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled objective kernels; see _reference.py for the formula contract."""

from libc.math cimport exp, log, pow

import numpy as np

NAME = "compiled"


cdef inline double _pow_or_zero(double mag, double alpha) noexcept nogil:
    if mag <= 0.0:
        return 0.0
    return exp(alpha * log(mag))


def pt_objective(c, pi, double loss, double q, double ir,
                 double alpha, double lam, double beta):
    """Overall prospect value of spending ``c`` on controls, per grid point."""
    cdef double[::1] cv = np.ascontiguousarray(c, dtype=np.float64)
    cdef double[::1] pv = np.ascontiguousarray(pi, dtype=np.float64)
    cdef Py_ssize_t n = cv.shape[0]
    if pv.shape[0] != n:
        raise ValueError("c and pi must have the same length")
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    cdef double coef = (1.0 + q) * ir * loss
    cdef double rest = (1.0 - ir) * loss
    cdef double premium, mag_attack, mag_quiet
    cdef double p, pb, qb, denom, w_attack, w_quiet
    with nogil:
        for i in range(n):
            premium = coef * pv[i]
            mag_attack = rest + premium + cv[i]
            mag_quiet = premium + cv[i]
            # w(p) and w(1-p) share both powers and the normalizer
            p = pv[i]
            if p <= 0.0:
                w_attack, w_quiet = 0.0, 1.0
            elif p >= 1.0:
                w_attack, w_quiet = 1.0, 0.0
            else:
                pb = exp(beta * log(p))
                qb = exp(beta * log(1.0 - p))
                denom = exp(log(pb + qb) / beta)
                w_attack = pb / denom
                w_quiet = qb / denom
            ov[i] = -lam * (w_attack * _pow_or_zero(mag_attack, alpha)
                            + w_quiet * _pow_or_zero(mag_quiet, alpha))
    return out


def eut_objective(c, pi, double wealth, double loss, double q, double ir, double r):
    """Expected CRRA utility of spending ``c`` on controls, per grid point."""
    cdef double[::1] cv = np.ascontiguousarray(c, dtype=np.float64)
    cdef double[::1] pv = np.ascontiguousarray(pi, dtype=np.float64)
    cdef Py_ssize_t n = cv.shape[0]
    if pv.shape[0] != n:
        raise ValueError("c and pi must have the same length")
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    cdef double coef = (1.0 + q) * ir * loss
    cdef double rest = (1.0 - ir) * loss
    cdef double premium, base_attack, base_quiet
    cdef bint bad = False
    with nogil:
        for i in range(n):
            premium = coef * pv[i]
            base_attack = wealth - rest - premium - cv[i]
            base_quiet = wealth - premium - cv[i]
            if base_attack < 0.0:
                bad = True
                break
            ov[i] = pv[i] * pow(base_attack, r) + (1.0 - pv[i]) * pow(base_quiet, r)
    if bad:
        raise ValueError("outlays exceed wealth somewhere on the grid")
    return out
