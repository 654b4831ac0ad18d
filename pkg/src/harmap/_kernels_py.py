"""Pure numpy implementations of the hot kernels.

These mirror ``_kernels_cy.pyx`` one-for-one and are used whenever the
compiled extension is unavailable.
"""

import numpy as np

# points per chunk in theta_sup; bounds the (points x phases) temporaries
_CHUNK = 2048


def horner_derivs(coeffs, z):
    """Value, first and second derivative of a polynomial at every point of ``z``."""
    c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    z = np.ascontiguousarray(z, dtype=np.complex128)
    p = np.full(z.shape, c[-1], dtype=np.complex128)
    d1 = np.zeros_like(p)
    d2 = np.zeros_like(p)
    for k in range(c.shape[0] - 2, -1, -1):
        d2 = d2 * z + d1
        d1 = d1 * z + p
        p = p * z + c[k]
    return p, d1, 2.0 * d2


def theta_sup(hp, hpp, gp, gpp, weights, phases):
    """Per point, the max over phases of ``weight * |hpp + e gpp| / |hp + e gp|``.

    Returns the maxima and the index of the maximizing phase.
    """
    hp = np.asarray(hp, dtype=np.complex128)
    hpp = np.asarray(hpp, dtype=np.complex128)
    gp = np.asarray(gp, dtype=np.complex128)
    gpp = np.asarray(gpp, dtype=np.complex128)
    weights = np.asarray(weights, dtype=np.float64)
    phases = np.asarray(phases, dtype=np.complex128)
    n = hp.shape[0]
    vals = np.empty(n, dtype=np.float64)
    idx = np.empty(n, dtype=np.int64)
    for start in range(0, n, _CHUNK):
        sl = slice(start, start + _CHUNK)
        num = np.abs(hpp[sl, None] + phases[None, :] * gpp[sl, None])
        den = np.abs(hp[sl, None] + phases[None, :] * gp[sl, None])
        ratio = num / den
        j = np.argmax(ratio, axis=1)
        idx[sl] = j
        vals[sl] = weights[sl] * ratio[np.arange(j.shape[0]), j]
    return vals, idx


def extremal_recurrence(lam, n):
    """Taylor coefficients c_0..c_n of ((1+t)/(1-t))**lam.

    Uses (k+1) c_{k+1} = 2 lam c_k + (k-1) c_{k-1}, c_0 = 1, c_1 = 2 lam.
    """
    c = np.zeros(n + 1, dtype=np.float64)
    c[0] = 1.0
    if n >= 1:
        c[1] = 2.0 * lam
    for k in range(1, n):
        c[k + 1] = (2.0 * lam * c[k] + (k - 1) * c[k - 1]) / (k + 1)
    return c
