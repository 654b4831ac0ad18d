"""Truncated complex power series on the unit disk.

A :class:`ComplexSeries` stores c_0..c_N as a read-only complex128 array.
Every function here is pure; series are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from harmap import kernels
from harmap.errors import RadiusError, SeriesDivisionError

DEFAULT_ORDER = 256
EPS_DIV = 1e-12
TAIL_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class ComplexSeries:
    """Taylor coefficients (c_0, ..., c_N) of an analytic function.

    ``polynomial=True`` records that every coefficient past N is exactly
    zero, so evaluation is exact anywhere in the disk.
    """

    coeffs: np.ndarray
    polynomial: bool = False

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if c.size == 0:
            raise ValueError("a series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    def __len__(self):
        return self.coeffs.shape[0]

    def __eq__(self, other):
        if not isinstance(other, ComplexSeries):
            return NotImplemented
        return self.polynomial == other.polynomial and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def __call__(self, z):
        return evaluate(self, z)

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:4])
        more = ", ..." if self.order > 3 else ""
        return f"ComplexSeries(N={self.order}, [{head}{more}])"

    @classmethod
    def zero(cls, order=0):
        return cls(np.zeros(order + 1), polynomial=True)

    @classmethod
    def monomial(cls, n, coeff=1.0):
        c = np.zeros(n + 1, dtype=np.complex128)
        c[n] = coeff
        return cls(c, polynomial=True)

    def padded(self, order: int) -> ComplexSeries:
        """Same function with the coefficient list extended by zeros (or cut)."""
        c = np.zeros(order + 1, dtype=np.complex128)
        m = min(order, self.order) + 1
        c[:m] = self.coeffs[:m]
        return ComplexSeries(c, polynomial=self.polynomial and order >= self.order)

    def to_pairs(self):
        return [[float(c.real), float(c.imag)] for c in self.coeffs]

    @classmethod
    def from_pairs(cls, pairs, polynomial=False):
        return cls(np.array([complex(re, im) for re, im in pairs]), polynomial=polynomial)


def _as_points(z):
    return np.atleast_1d(np.asarray(z, dtype=np.complex128))


def _check_open_disk(z):
    if np.any(~np.isfinite(z)) or np.any(np.abs(z) >= 1.0):
        raise RadiusError("evaluation point outside the open unit disk")


def evaluate(s: ComplexSeries, z):
    """Sum of c_n z^n by Horner's scheme; scalar in, scalar out."""
    pts = _as_points(z)
    _check_open_disk(pts)
    p, _, _ = kernels.horner_derivs(s.coeffs, pts.ravel())
    p = p.reshape(pts.shape)
    return complex(p[0]) if np.ndim(z) == 0 else p.reshape(np.shape(z))


def evaluate_derivs(s: ComplexSeries, z):
    """(s, s', s'') at the points ``z`` in one Horner pass (arrays)."""
    pts = _as_points(z)
    _check_open_disk(pts)
    shape = np.shape(z)
    p, d1, d2 = kernels.horner_derivs(s.coeffs, pts.ravel())
    return p.reshape(shape), d1.reshape(shape), d2.reshape(shape)


def derivative(s: ComplexSeries) -> ComplexSeries:
    if s.order == 0:
        return ComplexSeries.zero(0)
    n = np.arange(1, s.order + 1)
    return ComplexSeries(n * s.coeffs[1:], polynomial=s.polynomial)


def antiderivative(s: ComplexSeries) -> ComplexSeries:
    """Primitive vanishing at 0; the order grows by one."""
    c = np.zeros(s.order + 2, dtype=np.complex128)
    c[1:] = s.coeffs / np.arange(1, s.order + 2)
    return ComplexSeries(c, polynomial=s.polynomial)


def add(a: ComplexSeries, b: ComplexSeries) -> ComplexSeries:
    n = max(a.order, b.order)
    return ComplexSeries(
        a.padded(n).coeffs + b.padded(n).coeffs, polynomial=a.polynomial and b.polynomial
    )


def scale(s: ComplexSeries, factor: complex) -> ComplexSeries:
    return ComplexSeries(complex(factor) * s.coeffs, polynomial=s.polynomial)


def multiply(a: ComplexSeries, b: ComplexSeries, order: int | None = None) -> ComplexSeries:
    """Cauchy product truncated to ``order`` (default: the larger order)."""
    n = max(a.order, b.order) if order is None else order
    c = np.convolve(a.coeffs, b.coeffs)[: n + 1]
    out = np.zeros(n + 1, dtype=np.complex128)
    out[: c.shape[0]] = c
    exact = a.polynomial and b.polynomial and a.order + b.order <= n
    return ComplexSeries(out, polynomial=exact)


def divide(num: ComplexSeries, den: ComplexSeries, order: int | None = None) -> ComplexSeries:
    """First ``order + 1`` Taylor coefficients of num/den.

    Solves sum_k den_k q_{n-k} = num_n for q_n in turn.
    """
    b = den.coeffs
    if abs(b[0]) <= EPS_DIV:
        raise SeriesDivisionError("series division singular")
    n = max(num.order, den.order) if order is None else order
    a = num.padded(n).coeffs
    bb = den.padded(n).coeffs
    q = np.zeros(n + 1, dtype=np.complex128)
    for k in range(n + 1):
        # bb[1:k+1] . q[k-1::-1]
        acc = np.dot(bb[1 : k + 1], q[k - 1 :: -1]) if k else 0.0
        q[k] = (a[k] - acc) / bb[0]
    exact = num.polynomial and den.polynomial and den.order == 0
    return ComplexSeries(q, polynomial=exact)


def tail_bound(s: ComplexSeries, r: float) -> float:
    """Ratio-test estimate |c_N| r^N * r/(1-r) of the truncation error at radius r.

    The largest of the last four coefficient moduli stands in for |c_N| so a
    single vanishing trailing coefficient does not hide the tail.
    """
    if s.polynomial:
        return 0.0
    c = float(np.max(np.abs(s.coeffs[-4:])))
    if c == 0.0 or r <= 0.0:
        return 0.0
    if r >= 1.0:
        return float("inf")
    return c * r ** s.order * r / (1.0 - r)


def trusted_radius(s: ComplexSeries, tol: float = TAIL_TOL) -> float:
    """Largest r for which :func:`tail_bound` stays below ``tol``.

    Returns 1.0 for polynomials and for series whose tail is identically zero.
    """
    if s.polynomial:
        return 1.0
    c = float(np.max(np.abs(s.coeffs[-4:])))
    if c == 0.0:
        return 1.0
    n = s.order

    def excess(r):
        return np.log(c) + (n + 1) * np.log(r) - np.log1p(-r) - np.log(tol)

    lo, hi = 1e-300, 1.0 - 1e-16
    if excess(lo) >= 0.0:
        return 0.0
    return float(brentq(excess, lo, hi, xtol=1e-15, rtol=1e-14))
