# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the hot kernels (see ``_kernels_py`` for the reference)."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

from libc.math cimport sqrt


cdef inline double abs2(double complex x) noexcept nogil:
    return x.real * x.real + x.imag * x.imag


def horner_derivs(coeffs, z):
    cdef const double complex[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef const double complex[::1] zz = np.ascontiguousarray(z, dtype=np.complex128)
    cdef Py_ssize_t n = zz.shape[0]
    cdef Py_ssize_t m = c.shape[0]
    out_p = np.empty(n, dtype=np.complex128)
    out_d1 = np.empty(n, dtype=np.complex128)
    out_d2 = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] op = out_p
    cdef double complex[::1] od1 = out_d1
    cdef double complex[::1] od2 = out_d2
    cdef Py_ssize_t i, k
    cdef double complex ck, x
    # coefficient-outer loop: independent points in the inner loop pipeline well,
    # where a point-outer loop is one long serial dependency chain
    with nogil:
        for i in range(n):
            op[i] = c[m - 1]
            od1[i] = 0
            od2[i] = 0
        for k in range(m - 2, -1, -1):
            ck = c[k]
            for i in range(n):
                x = zz[i]
                od2[i] = od2[i] * x + od1[i]
                od1[i] = od1[i] * x + op[i]
                op[i] = op[i] * x + ck
        for i in range(n):
            od2[i] = 2.0 * od2[i]
    return out_p, out_d1, out_d2


def theta_sup(hp, hpp, gp, gpp, weights, phases):
    cdef const double complex[::1] a = np.ascontiguousarray(hp, dtype=np.complex128)
    cdef const double complex[::1] b = np.ascontiguousarray(hpp, dtype=np.complex128)
    cdef const double complex[::1] c = np.ascontiguousarray(gp, dtype=np.complex128)
    cdef const double complex[::1] d = np.ascontiguousarray(gpp, dtype=np.complex128)
    cdef const double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef const double complex[::1] e = np.ascontiguousarray(phases, dtype=np.complex128)
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t m = e.shape[0]
    vals = np.empty(n, dtype=np.float64)
    idx = np.empty(n, dtype=np.int64)
    cdef double[::1] ov = vals
    cdef cnp.int64_t[::1] oi = idx
    cdef Py_ssize_t i, j, jbest
    cdef double r, best
    with nogil:
        for i in range(n):
            # compare squared ratios; one square root per point
            best = -1.0
            jbest = 0
            for j in range(m):
                r = abs2(b[i] + e[j] * d[i]) / abs2(a[i] + e[j] * c[i])
                if r > best:
                    best = r
                    jbest = j
            ov[i] = w[i] * sqrt(best)
            oi[i] = jbest
    return vals, idx


def extremal_recurrence(double lam, Py_ssize_t n):
    out = np.zeros(n + 1, dtype=np.float64)
    cdef double[::1] c = out
    cdef Py_ssize_t k
    c[0] = 1.0
    if n >= 1:
        c[1] = 2.0 * lam
    with nogil:
        for k in range(1, n):
            c[k + 1] = (2.0 * lam * c[k] + (k - 1) * c[k - 1]) / (k + 1)
    return out
