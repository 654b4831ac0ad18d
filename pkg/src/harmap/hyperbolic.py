"""Hyperbolic metric of the unit disk and scaled disk automorphisms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from harmap.errors import RadiusError


def _check_in_disk(*pts):
    for z in pts:
        if not np.all(np.abs(np.asarray(z)) < 1.0):
            raise RadiusError("point outside the open unit disk")


def pseudo_hyperbolic(z, w):
    """|z - w| / |1 - conj(z) w|."""
    _check_in_disk(z, w)
    z = np.asarray(z, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    return np.abs(z - w) / np.abs(1.0 - np.conj(z) * w)


def hyperbolic_distance(z, w):
    """d_h(z, w) = (1/2) log((1 + p) / (1 - p)) with p the pseudo-hyperbolic distance."""
    p = pseudo_hyperbolic(z, w)
    d = 0.5 * np.log((1.0 + p) / (1.0 - p))
    return float(d) if np.ndim(d) == 0 else d


def in_hyperbolic_disk(z, a, rho: float) -> bool:
    """Membership in the open hyperbolic disk D_h(a, rho)."""
    if not rho > 0:
        raise ValueError("hyperbolic radius must be positive")
    return bool(hyperbolic_distance(z, a) < rho)


@dataclass(frozen=True)
class MoebiusPullback:
    """T(xi) = (R xi + a) / (1 + conj(a) R xi), a disk automorphism scaled by R = tanh(rho)."""

    a: complex
    R: float

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "R", float(self.R))
        if not abs(self.a) < 1.0:
            raise ValueError("pullback center must satisfy |a| < 1")
        if not 0.0 < self.R < 1.0:
            raise ValueError("pullback scale must satisfy 0 < R < 1")

    @classmethod
    def from_radius(cls, a, rho: float) -> MoebiusPullback:
        return cls(a, np.tanh(rho))

    @property
    def rho(self) -> float:
        return float(np.arctanh(self.R))


def pullback_apply(T: MoebiusPullback, xi):
    """Return (T(xi), T'(xi), T''(xi)/T'(xi)) from the closed forms."""
    _check_in_disk(xi)
    xi = np.asarray(xi, dtype=np.complex128)
    a, R = T.a, T.R
    den = 1.0 + a.conjugate() * R * xi
    w = (R * xi + a) / den
    d1 = R * (1.0 - abs(a) ** 2) / den**2
    ratio = -2.0 * a.conjugate() * R / den
    if np.ndim(w) == 0:
        return complex(w), complex(d1), complex(ratio)
    return w, d1, ratio


def pullback_second_derivative(T: MoebiusPullback, xi):
    """T''(xi) = -2 conj(a) (1 - |a|^2) R^2 / (1 + conj(a) R xi)^3."""
    xi = np.asarray(xi, dtype=np.complex128)
    a, R = T.a, T.R
    out = -2.0 * a.conjugate() * (1.0 - abs(a) ** 2) * R**2 / (1.0 + a.conjugate() * R * xi) ** 3
    return complex(out) if np.ndim(out) == 0 else out
