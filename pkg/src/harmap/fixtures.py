"""Named test maps with known values and where those values come from."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from harmap import series as cs
from harmap.extremal import covering_radius, extremal_map
from harmap.hmap import ClosedForm, HarmonicMap, affine_shear, dump_map, identity_map, rotate
from harmap.series import DEFAULT_ORDER, ComplexSeries

EXTREMAL_LAMBDAS = (0.0, 0.5, 1.0, 2.0, 3.0)
ROTATED_LAMBDAS = (0.5, 1.0, 2.0)
ROTATION = cmath.exp(1j * math.pi / 3)
SHEAR_KS = (0.25, 0.5)
AFFINE_CS = (0.3, 0.5j)


@dataclass(frozen=True)
class Known:
    value: float
    provenance: str  # PUBLISHED, TRIVIAL or DERIVED: <oracle>


@dataclass(frozen=True)
class Fixture:
    name: str
    map: HarmonicMap
    univalent: bool
    known: dict = field(default_factory=dict)  # key -> Known

    def value(self, key):
        k = self.known.get(key)
        return None if k is None else k.value


def shear_norm(k: float) -> float:
    """max over 0 <= r < 1 of k(1 - r^2)/(1 - k r); the maximizer solves k r^2 - 2r + k = 0."""
    if k == 0:
        return 0.0
    r = (1.0 - math.sqrt(1.0 - k * k)) / k
    return k * (1.0 - r * r) / (1.0 - k * r)


def shear_map(k: float, order: int = 2) -> HarmonicMap:
    """h = z, g = k z^2 / 2, dilatation k z."""
    h = ComplexSeries(np.array([0, 1, 0], dtype=complex), polynomial=True).padded(max(order, 2))
    g = ComplexSeries(np.array([0, 0, k / 2], dtype=complex), polynomial=True).padded(max(order, 2))
    return HarmonicMap(h, g, name=f"shear_k{k:g}")


def koebe_map(order: int = DEFAULT_ORDER) -> HarmonicMap:
    n = np.arange(order + 1, dtype=float)
    h = ComplexSeries(n.astype(complex))

    def nil(z):
        return np.zeros(np.shape(z), dtype=np.complex128)

    closed = ClosedForm(
        dh=lambda z: (1 + z) / (1 - z) ** 3,
        d2h=lambda z: (4 + 2 * z) / (1 - z) ** 4,
        dg=nil,
        d2g=nil,
        h=lambda z: z / (1 - z) ** 2,
        g=nil,
    )
    return HarmonicMap(h, ComplexSeries.zero(order), closed, "koebe")


def harmonic_koebe_map(order: int = DEFAULT_ORDER) -> HarmonicMap:
    """h = (z - z^2/2 + z^3/6)/(1-z)^3, g = (z^2/2 + z^3/6)/(1-z)^3; coefficients by series division."""
    den = ComplexSeries(np.array([1, -3, 3, -1], dtype=complex), polynomial=True)
    h = cs.divide(ComplexSeries(np.array([0, 1, -0.5, 1 / 6], dtype=complex)), den, order)
    g = cs.divide(ComplexSeries(np.array([0, 0, 0.5, 1 / 6], dtype=complex)), den, order)

    def dh(z):
        return (1 + z) / (1 - z) ** 4

    def d2h(z):
        return dh(z) * (1 / (1 + z) + 4 / (1 - z))

    closed = ClosedForm(
        dh=dh,
        d2h=d2h,
        dg=lambda z: z * dh(z),
        d2g=lambda z: dh(z) + z * d2h(z),
        h=lambda z: (z - z**2 / 2 + z**3 / 6) / (1 - z) ** 3,
        g=lambda z: (z**2 / 2 + z**3 / 6) / (1 - z) ** 3,
    )
    return HarmonicMap(h, g, closed, "harmonic_koebe")


def _extremal_known(lam):
    known = {
        "norm": Known(2 * lam, "PUBLISHED"),
        "gamma": Known(lam - 1, "PUBLISHED"),
        "covering_radius": Known(covering_radius(lam), "DERIVED: quadrature of ((1-t)/(1+t))^lam on [0,1]"),
    }
    if lam == 1:
        known["covering_radius"] = Known(2 * math.log(2) - 1, "PUBLISHED")
    if lam < 1:
        known["bounded"] = Known(1.0, "PUBLISHED")
    return known


@lru_cache(maxsize=4)
def _build(order: int):
    out = [Fixture("identity", identity_map(order), True, {
        "norm": Known(0.0, "TRIVIAL"), "qc": Known(0.0, "TRIVIAL"), "bloch": Known(1.0, "TRIVIAL")})]
    for lam in EXTREMAL_LAMBDAS:
        out.append(Fixture(f"H_{lam:g}", extremal_map(lam, order), lam <= 1, _extremal_known(lam)))
    for lam in ROTATED_LAMBDAS:
        f = rotate(extremal_map(lam, order), ROTATION)
        f = HarmonicMap(f.h, f.g, f.closed, f"H_{lam:g}_rot")
        out.append(Fixture(f.name, f, lam <= 1, {"norm": Known(2 * lam, "DERIVED: rotation invariance")}))
    out.append(Fixture("koebe", koebe_map(order), True, {
        "norm": Known(6.0, "DERIVED: (1-r^2) k''/k' = 4 + 2r on the radius"), "gamma": Known(2.0, "TRIVIAL")}))
    for k in SHEAR_KS:
        out.append(Fixture(f"shear_k{k:g}", shear_map(k, order), True, {
            "norm": Known(shear_norm(k), "DERIVED: one-dimensional maximization"),
            "qc": Known(k, "TRIVIAL")}))
    for c in AFFINE_CS:
        f = affine_shear(extremal_map(1.0, order), c)
        label = f"{c.imag:g}i" if isinstance(c, complex) else f"{c:g}"
        f = HarmonicMap(f.h, f.g, f.closed, f"H_1_affine_{label}")
        out.append(Fixture(f.name, f, True, {
            "norm": Known(2.0, "DERIVED: every phase slice is a multiple of H_1"),
            "qc": Known(abs(c), "TRIVIAL")}))
    out.append(Fixture("harmonic_koebe", harmonic_koebe_map(order), True, {
        "norm": Known(8.0, "DERIVED: exact phase supremum on a dense grid, limit r -> 1"),
        "a2": Known(2.5, "DERIVED: series-division oracle"),
        "b2": Known(0.5, "DERIVED: series-division oracle"),
        "gamma": Known(3.0, "DERIVED: a_n = (n+1)(2n+1)/6")}))
    return tuple(out)


def corpus(order: int = DEFAULT_ORDER) -> list[Fixture]:
    return list(_build(int(order)))


def fixture_names() -> list[str]:
    return [fx.name for fx in _build(DEFAULT_ORDER)]


def get_fixture(name: str, order: int = DEFAULT_ORDER) -> Fixture:
    for fx in _build(int(order)):
        if fx.name == name:
            return fx
    raise KeyError(f"unknown fixture {name!r}")


def export_fixture(name: str, order: int = DEFAULT_ORDER) -> str:
    """JSON coefficient document for a fixture (closed forms are not serialized)."""
    return dump_map(get_fixture(name, order).map)
