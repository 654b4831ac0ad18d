"""Harmonic mappings f = h + conj(g) and their pointwise invariants."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from harmap import series as cs
from harmap.errors import HarmapError, NormalizationError, NotLocallyUnivalent, RadiusError
from harmap.series import EPS_DIV, ComplexSeries

# closed-form maps are trusted anywhere strictly inside the disk
CLOSED_FORM_RADIUS = 1.0

_GAUSS_X, _GAUSS_W = np.polynomial.legendre.leggauss(16)


class MapFormatError(HarmapError):
    """Malformed coefficient document."""


@dataclass(frozen=True)
class GridSpec:
    """Polar sampling grid: ``n_radial`` radii in [0, r_max] times ``n_angular`` angles."""

    n_radial: int = 64
    n_angular: int = 256

    def __post_init__(self):
        if self.n_radial < 2 or self.n_angular < 1:
            raise ValueError("grid needs n_radial >= 2 and n_angular >= 1")

    def radii(self, r_max):
        return r_max * np.arange(self.n_radial) / (self.n_radial - 1)

    def angles(self):
        return 2.0 * np.pi * np.arange(self.n_angular) / self.n_angular

    def points(self, r_max):
        r = self.radii(r_max)
        return (r[:, None] * np.exp(1j * self.angles())[None, :]).ravel()

    def refined(self) -> GridSpec:
        return GridSpec(2 * self.n_radial, 2 * self.n_angular)

    @classmethod
    def parse(cls, text: str) -> GridSpec:
        """Parse ``"NRxNA"``, e.g. ``"64x256"``."""
        try:
            nr, na = text.lower().split("x")
            return cls(int(nr), int(na))
        except ValueError as exc:
            raise ValueError(f"grid must look like 64x256, got {text!r}") from exc

    def __str__(self):
        return f"{self.n_radial}x{self.n_angular}"


def integrate_from_origin(df: Callable, z) -> np.ndarray:
    """Integral of the analytic ``df`` along [0, z] for each point of ``z``.

    Composite 16-point Gauss-Legendre on panels graded geometrically toward
    the endpoint, so integrands singular on the unit circle stay resolved up
    to |z| close to 1.
    """
    z = np.asarray(z, dtype=np.complex128)
    flat = z.ravel()
    if flat.size == 0:
        return z.copy()
    rho = float(np.max(np.abs(flat)))
    if rho == 0.0:
        return np.zeros_like(z)
    gap = max(1.0 - rho, 1e-15)
    # panels in u = 1 - s (distance from the endpoint, in parameter units)
    edges = [1.0]
    while edges[-1] * rho > gap:
        edges.append(edges[-1] / 2.0)
    edges.append(0.0)
    total = np.zeros(flat.shape, dtype=np.complex128)
    for u_hi, u_lo in zip(edges[:-1], edges[1:]):
        s_lo, s_hi = 1.0 - u_hi, 1.0 - u_lo
        half = 0.5 * (s_hi - s_lo)
        s = s_lo + half * (_GAUSS_X + 1.0)
        vals = df(flat[:, None] * s[None, :])
        total += half * (vals @ _GAUSS_W)
    return (total * flat).reshape(z.shape)


@dataclass(frozen=True)
class ClosedForm:
    """Vectorized closed-form evaluators backing a map near the boundary.

    Values of h and g are optional; when absent they are recovered from the
    first derivatives by :func:`integrate_from_origin`.
    """

    dh: Callable
    d2h: Callable
    dg: Callable
    d2g: Callable
    h: Callable | None = None
    g: Callable | None = None

    def h_value(self, z):
        return self.h(z) if self.h is not None else integrate_from_origin(self.dh, z)

    def g_value(self, z):
        return self.g(z) if self.g is not None else integrate_from_origin(self.dg, z)


class Jet(NamedTuple):
    h1: np.ndarray
    h2: np.ndarray
    g1: np.ndarray
    g2: np.ndarray


@dataclass(frozen=True, eq=False)
class HarmonicMap:
    """f = h + conj(g) with h, g given as truncated series.

    ``closed``, when set, evaluates the same map exactly and is preferred
    over the series for every pointwise quantity.
    """

    h: ComplexSeries
    g: ComplexSeries
    closed: ClosedForm | None = None
    name: str = ""

    @property
    def normalized(self) -> bool:
        a, b = self.h.coeffs, self.g.coeffs
        return a[0] == 0 and b[0] == 0 and self.h.order >= 1 and a[1] == 1

    @property
    def b1(self) -> complex:
        return complex(self.g.coeffs[1]) if self.g.order >= 1 else 0j

    @property
    def a1(self) -> complex:
        return complex(self.h.coeffs[1]) if self.h.order >= 1 else 0j

    @property
    def order(self) -> int:
        return max(self.h.order, self.g.order)

    def trusted_radius(self) -> float:
        """Radius inside which every value and derivative used here is trusted."""
        if self.closed is not None:
            return CLOSED_FORM_RADIUS
        parts = []
        for s in (self.h, self.g):
            d1 = cs.derivative(s)
            parts += [s, d1, cs.derivative(d1)]
        return min(cs.trusted_radius(p) for p in parts)

    def check_radius(self, z, r_max: float | None = None) -> float:
        """Validate points against ``r_max`` (default: the trusted radius)."""
        trusted = self.trusted_radius()
        if r_max is None:
            r_max = min(trusted, 1.0 - 1e-12)
        elif r_max > trusted:
            raise RadiusError(
                f"outside trusted radius: r_max={r_max:.6g} exceeds {trusted:.6g} for order {self.order}"
            )
        if r_max >= 1.0:
            raise RadiusError("outside trusted radius: r_max must be < 1")
        if np.any(np.abs(np.asarray(z)) > r_max + 1e-15):
            raise RadiusError(f"outside trusted radius: |z| > r_max = {r_max:.6g}")
        return r_max

    def jet(self, z) -> Jet:
        """h', h'', g', g'' at ``z`` (no radius check)."""
        z = np.asarray(z, dtype=np.complex128)
        if self.closed is not None:
            c = self.closed
            return Jet(c.dh(z), c.d2h(z), c.dg(z), c.d2g(z))
        _, h1, h2 = cs.evaluate_derivs(self.h, z)
        _, g1, g2 = cs.evaluate_derivs(self.g, z)
        return Jet(h1, h2, g1, g2)

    def parts(self, z):
        """(h(z), g(z)) (no radius check)."""
        z = np.asarray(z, dtype=np.complex128)
        if self.closed is not None:
            return self.closed.h_value(z), self.closed.g_value(z)
        return cs.evaluate_derivs(self.h, z)[0], cs.evaluate_derivs(self.g, z)[0]

    def values(self, z):
        hv, gv = self.parts(z)
        return hv + np.conj(gv)

    def to_document(self) -> dict:
        return {"h": self.h.to_pairs(), "g": self.g.to_pairs()}


def identity_map(order=1) -> HarmonicMap:
    h = ComplexSeries.monomial(1).padded(order)
    return HarmonicMap(h, ComplexSeries.zero(order), name="identity")


def eval_map(f: HarmonicMap, z, r_max: float | None = None):
    """f(z) = h(z) + conj(g(z)); scalar in, scalar out."""
    f.check_radius(z, r_max)
    out = f.values(z)
    return complex(out) if np.ndim(z) == 0 else out


@dataclass(frozen=True)
class PointwiseInvariants:
    f_z: complex
    f_zbar: complex
    lambda_f: float
    Lambda_f: float
    jacobian: float
    dilatation: complex | None  # None where |h'| <= EPS_DIV


def invariants_at(f: HarmonicMap, z: complex, r_max: float | None = None) -> PointwiseInvariants:
    f.check_radius(z, r_max)
    j = f.jet(np.array([z]))
    hp, gp = complex(j.h1[0]), complex(j.g1[0])
    ah, ag = abs(hp), abs(gp)
    omega = gp / hp if ah > EPS_DIV else None
    return PointwiseInvariants(
        f_z=hp,
        f_zbar=gp.conjugate(),
        lambda_f=ah - ag,
        Lambda_f=ah + ag,
        jacobian=ah * ah - ag * ag,
        dilatation=omega,
    )


def qc_constant_estimate(f: HarmonicMap, r_max: float | None = None, grid: GridSpec = GridSpec()):
    """Grid sup of |g'/h'|, or None when the Jacobian is not positive on the grid."""
    r_max = f.check_radius(0.0, r_max)
    pts = grid.points(r_max)
    j = f.jet(pts)
    ah, ag = np.abs(j.h1), np.abs(j.g1)
    if np.any(ah * ah - ag * ag <= 0.0):
        return None
    return float(np.max(ag / ah))


def _combine(f: HarmonicMap, alpha, beta, gamma, delta, name=""):
    """Map with h~ = alpha h + beta g and g~ = gamma g + delta h."""
    h = cs.add(cs.scale(f.h, alpha), cs.scale(f.g, beta))
    g = cs.add(cs.scale(f.g, gamma), cs.scale(f.h, delta))
    closed = None
    if f.closed is not None:
        c = f.closed

        def lin(p, q, a, b):
            return lambda z: a * p(z) + b * q(z)

        closed = ClosedForm(
            dh=lin(c.dh, c.dg, alpha, beta),
            d2h=lin(c.d2h, c.d2g, alpha, beta),
            dg=lin(c.dg, c.dh, gamma, delta),
            d2g=lin(c.d2g, c.d2h, gamma, delta),
            h=lin(c.h_value, c.g_value, alpha, beta),
            g=lin(c.g_value, c.h_value, gamma, delta),
        )
    return HarmonicMap(h, g, closed, name)


def affine_shear(f: HarmonicMap, c: complex) -> HarmonicMap:
    """The map f + c conj(f), i.e. h + c g and g + conj(c) h."""
    c = complex(c)
    if abs(c) >= 1.0:
        raise ValueError("affine shear needs |c| < 1")
    if c == 0:
        return f
    name = f"{f.name}+c*conj" if f.name else ""
    return _combine(f, 1.0, c, 1.0, c.conjugate(), name)


def normalize_to_SH0(f: HarmonicMap) -> HarmonicMap:
    """(f - conj(b1) conj(f)) / (1 - |b1|^2); kills the co-analytic linear term."""
    b1 = f.b1
    if abs(b1) >= 1.0:
        raise NormalizationError("affine normalization singular")
    if b1 == 0:
        return f
    s = 1.0 / (1.0 - abs(b1) ** 2)
    c = -b1.conjugate()
    out = _combine(f, s, s * c, s, s * c.conjugate(), f.name)
    # the linear coefficients are exact by construction; remove rounding
    hc = out.h.coeffs.copy()
    gc = out.g.coeffs.copy()
    if f.h.order >= 1 and f.a1 == 1:
        hc[1] = 1.0
    gc[1] = 0.0
    return HarmonicMap(
        ComplexSeries(hc, out.h.polynomial), ComplexSeries(gc, out.g.polynomial), out.closed, out.name
    )


def rotate(f: HarmonicMap, mu: complex) -> HarmonicMap:
    """The map conj(mu) f(mu z) for |mu| = 1."""
    mu = complex(mu)
    if abs(abs(mu) - 1.0) > 1e-12:
        raise ValueError("rotation needs |mu| = 1")
    nh = np.arange(f.h.order + 1)
    ng = np.arange(f.g.order + 1)
    h = ComplexSeries(mu.conjugate() * mu**nh * f.h.coeffs, f.h.polynomial)
    g = ComplexSeries(mu * mu**ng * f.g.coeffs, f.g.polynomial)
    closed = None
    if f.closed is not None:
        c = f.closed
        mc = mu.conjugate()
        closed = ClosedForm(
            dh=lambda z: c.dh(mu * z),
            d2h=lambda z: mu * c.d2h(mu * z),
            dg=lambda z: mu**2 * c.dg(mu * z),
            d2g=lambda z: mu**3 * c.d2g(mu * z),
            h=lambda z: mc * c.h_value(mu * z),
            g=lambda z: mu * c.g_value(mu * z),
        )
    return HarmonicMap(h, g, closed, f.name)


def theta_slice(f: HarmonicMap, theta: float) -> ComplexSeries:
    """Coefficients of h + e^{i theta} g."""
    return cs.add(f.h, cs.scale(f.g, np.exp(1j * theta)))


def second_coeff_functional(f: HarmonicMap, xi: complex, r_max: float | None = None) -> complex:
    """(1/2) ((1 - |xi|^2) h''(xi)/h'(xi) - 2 conj(xi)) for the analytic part."""
    f.check_radius(xi, r_max)
    j = f.jet(np.array([xi]))
    h1, h2 = complex(j.h1[0]), complex(j.h2[0])
    if abs(h1) <= EPS_DIV:
        raise NotLocallyUnivalent("derivative vanishes; not locally univalent here")
    xi = complex(xi)
    return 0.5 * ((1.0 - abs(xi) ** 2) * h2 / h1 - 2.0 * xi.conjugate())


# -- coefficient documents ---------------------------------------------------


def _parse_coeff_list(doc, key):
    if key not in doc:
        raise MapFormatError(f"{key} coefficients missing")
    raw = doc[key]
    if not isinstance(raw, list) or not raw:
        raise MapFormatError(f"{key} coefficients must be a non-empty list of [re, im] pairs")
    out = []
    for i, item in enumerate(raw):
        if isinstance(item, (int, float)) and not isinstance(item, bool):
            item = [item, 0.0]
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in item)
        ):
            raise MapFormatError(f"{key}[{i}]: expected [re, im] pair of numbers, got {item!r}")
        z = complex(float(item[0]), float(item[1]))
        if not np.isfinite(z):
            raise MapFormatError(f"{key}[{i}]: coefficient is not finite")
        out.append(z)
    return out


def map_from_document(doc, name="") -> HarmonicMap:
    """Build a map from ``{"h": [[re, im], ...], "g": [[re, im], ...]}``.

    An optional ``"polynomial": true`` marks the lists as exact (no tail).
    """
    if not isinstance(doc, dict):
        raise MapFormatError("top level must be an object with keys 'h' and 'g'")
    h = _parse_coeff_list(doc, "h")
    g = _parse_coeff_list(doc, "g")
    poly = doc.get("polynomial", False)
    if not isinstance(poly, bool):
        raise MapFormatError("'polynomial' must be true or false")
    return HarmonicMap(ComplexSeries(h, poly), ComplexSeries(g, poly), name=name)


def load_map(path) -> HarmonicMap:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise MapFormatError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    except OSError as exc:
        raise MapFormatError(f"{path}: {exc.strerror}")
    return map_from_document(doc, name=str(path))


def dump_map(f: HarmonicMap, polynomial: bool | None = None) -> str:
    doc = f.to_document()
    if polynomial is None:
        polynomial = f.h.polynomial and f.g.polynomial
    if polynomial:
        doc["polynomial"] = True
    return json.dumps(doc)
