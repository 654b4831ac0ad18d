"""Backend selection for the hot kernels.

The compiled extension ``harmap._kernels_cy`` is used when it imports;
otherwise the numpy fallback in ``harmap._kernels_py`` is used. Setting
``HARMAP_PURE_PYTHON=1`` forces the fallback.
"""

import os

from harmap import _kernels_py

_compiled = None
if os.environ.get("HARMAP_PURE_PYTHON") != "1":
    try:
        from harmap import _kernels_cy as _compiled
    except ImportError:  # extension not built
        _compiled = None

_impl = _compiled if _compiled is not None else _kernels_py

BACKEND = "cython" if _compiled is not None else "python"


def available_backends():
    out = {"python": _kernels_py}
    if _compiled is not None:
        out["cython"] = _compiled
    return out


def horner_derivs(coeffs, z):
    return _impl.horner_derivs(coeffs, z)


def theta_sup(hp, hpp, gp, gpp, weights, phases):
    return _impl.theta_sup(hp, hpp, gp, gpp, weights, phases)


def extremal_recurrence(lam, n):
    return _impl.extremal_recurrence(float(lam), int(n))
