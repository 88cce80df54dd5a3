# cython: language_level=3
"""Compiled inner loops. ``_pykernels`` mirrors every function here."""
from libc.math cimport pow, log, log1p, floor, fabs

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64

cdef double _MAX_STEP = 4.0e18


def harmonic_sum(long long n_terms, double order):
    """Neumaier-compensated sum of k**(-order) for k = 1..n_terms."""
    cdef double s = 0.0, c = 0.0, t, x
    cdef long long k
    for k in range(1, n_terms + 1):
        x = pow(<double>k, -order)
        t = s + x
        if fabs(s) >= fabs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


cdef inline double _hazard(double a, double expo, double k) nogil:
    cdef double p = a * pow(k, -expo)
    return 1.0 if p > 1.0 else p


def stepwise_events(const double[::1] u, i64 k, double a, double expo,
                    i64 horizon, i64[::1] out, i64 n_out, i64 forced):
    cdef Py_ssize_t i = 0, nu = u.shape[0]
    cdef Py_ssize_t cap = out.shape[0]
    cdef double p
    with nogil:
        while i < nu and n_out < cap:
            p = _hazard(a, expo, <double>k)
            if u[i] < p:
                out[n_out] = k
                n_out += 1
                k = 1
            elif horizon > 0 and k >= horizon:
                out[n_out] = k
                n_out += 1
                forced += 1
                k = 1
            else:
                k += 1
            i += 1
    return i, k, n_out, forced


def thinning_events(const double[::1] u, i64 k, double a, double expo,
                    i64 horizon, i64[::1] out, i64 n_out, i64 forced):
    cdef Py_ssize_t i = 0, nu = u.shape[0]
    cdef Py_ssize_t cap = out.shape[0]
    cdef double pb, g
    cdef i64 j
    cdef bint accept
    with nogil:
        while i + 1 < nu and n_out < cap:
            pb = _hazard(a, expo, <double>k)
            if pb >= 1.0:
                g = 0.0
            else:
                g = floor(log(1.0 - u[i]) / log1p(-pb))
                if g > _MAX_STEP:
                    g = _MAX_STEP
            j = k + <i64>g
            accept = u[i + 1] * pb < _hazard(a, expo, <double>j)
            i += 2
            if horizon > 0 and j >= horizon:
                out[n_out] = horizon
                n_out += 1
                if j > horizon or not accept:
                    forced += 1
                k = 1
            elif accept:
                out[n_out] = j
                n_out += 1
                k = 1
            else:
                k = j + 1
    return i, k, n_out, forced
