"""The extremal family H_lambda(z) = int_0^z ((1+t)/(1-t))^lambda dt and the bounds it makes sharp."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.optimize import minimize_scalar

from harmap import kernels
from harmap import series as cs
from harmap.errors import NotLocallyUnivalent, RadiusError
from harmap.hmap import ClosedForm, HarmonicMap, integrate_from_origin
from harmap.report import TOL_CHECK, VerificationReport
from harmap.series import DEFAULT_ORDER, EPS_DIV, ComplexSeries


@dataclass(frozen=True)
class ExtremalFamily:
    lam: float
    integrand_coeffs: ComplexSeries  # c_n of ((1+t)/(1-t))^lam
    map_coeffs: ComplexSeries  # H_lam: 0, c_0/1, c_1/2, ...

    def recurrence_residual(self) -> float:
        """Max relative residual of (n+1)c_{n+1} - 2 lam c_n - (n-1)c_{n-1}."""
        c = self.integrand_coeffs.coeffs.real
        if c.shape[0] < 3:
            return 0.0
        n = np.arange(1, c.shape[0] - 1)
        lhs = (n + 1) * c[2:]
        rhs = 2.0 * self.lam * c[1:-1] + (n - 1) * c[:-2]
        # normalize by term sizes; the terms nearly cancel for lam < 1
        scale = np.abs(lhs) + np.abs(2.0 * self.lam * c[1:-1]) + np.abs((n - 1) * c[:-2])
        scale[scale == 0] = 1.0
        return float(np.max(np.abs(lhs - rhs) / scale))


def build_extremal(lam: float, N: int = DEFAULT_ORDER) -> ExtremalFamily:
    """Coefficients of the integrand to order N and of H_lam to order N+1.

    The integrand q satisfies (1 - t^2) q' = 2 lam q, which gives the
    three-term recurrence evaluated in :func:`harmap.kernels.extremal_recurrence`.
    """
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if N < 2:
        raise ValueError("N must be at least 2")
    c = kernels.extremal_recurrence(lam, N)
    # only lam = 0 terminates
    integrand = ComplexSeries(c, polynomial=(lam == 0))
    return ExtremalFamily(float(lam), integrand, cs.antiderivative(integrand))


def extremal_derivative(lam, z):
    """H_lam'(z) = ((1+z)/(1-z))^lam, principal branch (the base has positive real part)."""
    z = np.asarray(z, dtype=np.complex128)
    return ((1.0 + z) / (1.0 - z)) ** lam


def extremal_second_derivative(lam, z):
    z = np.asarray(z, dtype=np.complex128)
    return extremal_derivative(lam, z) * (2.0 * lam / (1.0 - z * z))


_CLOSED_VALUES = {
    0.0: lambda z: z,
    0.5: lambda z: np.arcsin(z) - np.sqrt(1.0 - z * z) + 1.0,
    1.0: lambda z: -2.0 * np.log(1.0 - z) - z,
    2.0: lambda z: z + 4.0 * (1.0 / (1.0 - z) - 1.0 + np.log(1.0 - z)),
    3.0: lambda z: 8.0 - z + 4.0 / (1.0 - z) ** 2 - 12.0 / (1.0 - z) - 6.0 * np.log(1.0 - z),
}


def extremal_value(lam, z):
    """H_lam(z); elementary closed forms for lam in {0, 1/2, 1, 2, 3}, quadrature otherwise."""
    z = np.asarray(z, dtype=np.complex128)
    fn = _CLOSED_VALUES.get(float(lam))
    if fn is not None:
        return fn(z)
    return integrate_from_origin(lambda t: extremal_derivative(lam, t), z)


def extremal_map(lam: float, order: int = DEFAULT_ORDER) -> HarmonicMap:
    """H_lam as a harmonic map with g = 0, backed by closed forms."""
    fam = build_extremal(lam, max(order - 1, 2))
    zero = ComplexSeries.zero(fam.map_coeffs.order)

    def nil(z):
        return np.zeros(np.shape(z), dtype=np.complex128)

    closed = ClosedForm(
        dh=lambda z: extremal_derivative(lam, z),
        d2h=lambda z: extremal_second_derivative(lam, z),
        dg=nil,
        d2g=nil,
        h=lambda z: extremal_value(lam, z),
        g=nil,
    )
    return HarmonicMap(fam.map_coeffs, zero, closed, f"H_{lam:g}")


def eval_extremal(E: ExtremalFamily, r: float, r_max: float | None = None):
    """(H_lam(r), H_lam'(r)) from the truncated series."""
    trusted = min(cs.trusted_radius(E.map_coeffs), cs.trusted_radius(E.integrand_coeffs))
    if r_max is None:
        r_max = min(trusted, 1.0 - 1e-12)
    elif r_max > trusted:
        raise RadiusError(f"outside trusted radius: r_max={r_max:.6g} exceeds {trusted:.6g}")
    if not 0.0 <= r <= r_max:
        raise RadiusError(f"r must lie in [0, r_max={r_max:.6g}]")
    p, d1, _ = cs.evaluate_derivs(E.map_coeffs, np.array([r]))
    return float(p[0].real), float(d1[0].real)


def growth_upper(lam: float, r: float) -> float:
    """H_lam(r) for real 0 <= r < 1."""
    val, _ = integrate.quad(lambda t: ((1.0 + t) / (1.0 - t)) ** lam, 0.0, r, epsabs=1e-13, epsrel=1e-13, limit=200)
    return float(val)


def growth_lower(lam: float, r: float) -> float:
    """-H_lam(-r) for real 0 <= r <= 1."""
    val, _ = integrate.quad(lambda t: ((1.0 - t) / (1.0 + t)) ** lam, 0.0, r, epsabs=1e-13, epsrel=1e-13, limit=200)
    return float(val)


def covering_radius(lam: float) -> float:
    """-H_lam(-1), the radius of the disk covered by every normalized member."""
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    val, _ = integrate.quad(lambda t: ((1.0 - t) / (1.0 + t)) ** lam, 0.0, 1.0, epsabs=1e-10, epsrel=1e-12, limit=200)
    return float(val)


def distortion_report(
    f: HarmonicMap,
    lam: float,
    r_grid,
    n_angles: int = 64,
    univalent: bool = False,
    r_max: float | None = None,
    tol: float = TOL_CHECK,
) -> VerificationReport:
    """Distortion and growth bounds for a member of B_H(lam), worst case per radius.

    Checks, on each circle |z| = r:
      ||h'| - |g'|| >= |1 - |b1|| ((1-r)/(1+r))^lam
      |h'| + |g'|   <= (1 + |b1|) ((1+r)/(1-r))^lam
      |f|           <= (1 + |b1|) H_lam(r)
    and, for univalent f with b1 = 0, |f| >= -H_lam(-r).
    """
    report = VerificationReport()
    b1 = abs(f.b1)
    if b1 >= 1.0:
        report.details["note"] = "|b1| >= 1: lower distortion bound is vacuous"
    subject = f.name or "f"
    phi = 2.0 * np.pi * np.arange(n_angles) / n_angles
    for r in r_grid:
        r = float(r)
        pts = r * np.exp(1j * phi)
        f.check_radius(pts, r_max)
        j = f.jet(pts)
        ah, ag = np.abs(j.h1), np.abs(j.g1)
        modulus = np.abs(f.values(pts))
        tag = f"{subject} r={r:g}"

        small = np.abs(ah - ag)
        rhs = abs(1.0 - b1) * ((1.0 - r) / (1.0 + r)) ** lam
        k = int(np.argmin(small - rhs))
        report.add("distortion_lower", tag, small[k], rhs, small[k] - rhs, [pts[k]], tol)

        big = ah + ag
        rhs = (1.0 + b1) * ((1.0 + r) / (1.0 - r)) ** lam
        k = int(np.argmax(big))
        report.add("distortion_upper", tag, big[k], rhs, rhs - big[k], [pts[k]], tol)

        rhs = (1.0 + b1) * growth_upper(lam, r)
        k = int(np.argmax(modulus))
        report.add("growth_upper", tag, modulus[k], rhs, rhs - modulus[k], [pts[k]], tol)

        if univalent and f.b1 == 0 and f.normalized:
            lo = growth_lower(lam, r)
            k = int(np.argmin(modulus))
            report.add("growth_lower", tag, modulus[k], lo, modulus[k] - lo, [pts[k]], tol)
    return report


def boundary_pairs(point: complex, depths):
    """Pairs ((1-d) p, (1-2d) p) closing in on the boundary point p."""
    p = complex(point) / abs(point)
    return [((1.0 - d) * p, (1.0 - 2.0 * d) * p) for d in depths]


HOLDER_SLOPE_TOL = 0.05


def holder_check(
    f: HarmonicMap, lam: float, pairs, r_max: float | None = None, slope_tol: float = HOLDER_SLOPE_TOL
) -> VerificationReport:
    """Smallest C with |f(z1) - f(z2)| <= C |z1 - z2|^(1-lam) over the pairs.

    Pairs are grouped by dyadic scale of |z1 - z2|. Blow-up is declared when
    the per-scale constants grow, on the finest scales, faster than
    |z1 - z2|^(-slope_tol).
    """
    if not 0.0 <= lam < 1.0:
        raise ValueError("Hoelder check needs 0 <= lambda < 1")
    z1 = np.array([complex(p[0]) for p in pairs])
    z2 = np.array([complex(p[1]) for p in pairs])
    f.check_radius(np.concatenate([z1, z2]), r_max)
    dist = np.abs(z1 - z2)
    diff = np.abs(f.values(z1) - f.values(z2))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(dist > 0, diff / dist ** (1.0 - lam), 0.0)
    C = float(np.max(ratio)) if ratio.size else 0.0

    scales = {}
    for d, q in zip(dist, ratio):
        if d > 0:
            s = int(math.floor(math.log2(d)))
            scales[s] = max(scales.get(s, 0.0), float(q))
    keys = sorted(scales, reverse=True)  # coarse -> fine
    slope = 0.0
    fine = keys[len(keys) // 2 :] if len(keys) >= 6 else keys
    if len(fine) >= 3 and all(scales[k] > 0 for k in fine):
        x = np.array([-k * math.log(2.0) for k in fine])
        y = np.log([scales[k] for k in fine])
        slope = float(np.polyfit(x, y, 1)[0])
    report = VerificationReport()
    finest = scales[keys[-1]] if keys else 0.0
    report.add(
        "holder_stability",
        f"{f.name or 'f'} exponent={1.0 - lam:g}",
        slope,
        slope_tol,
        slope_tol - slope,
        [z1[int(np.argmax(ratio))]] if ratio.size else [],
        passed=slope <= slope_tol,
        note=f"C={C:.6g}, finest-scale C={finest:.6g}",
    )
    report.details.update(
        {"C": C, "scale_constants": [[2.0**k, scales[k]] for k in keys], "growth_slope": slope, "stable": slope <= slope_tol}
    )
    return report


@dataclass(frozen=True)
class BoundednessProbe:
    theta: float
    trajectory: list  # [(r, Q(r))]
    verdict: str

    def to_dict(self):
        return {"theta": self.theta, "trajectory": [[r, q] for r, q in self.trajectory], "verdict": self.verdict}


def _circle_sup_T(f, theta, r, n):
    e = np.exp(1j * theta)

    def mod_t(phi):
        z = np.atleast_1d(r * np.exp(1j * np.asarray(phi, dtype=float)))
        j = f.jet(z)
        den = j.h1 + e * j.g1
        if np.any(np.abs(den) <= EPS_DIV):
            raise NotLocallyUnivalent("slice derivative vanishes")
        return np.abs((j.h2 + e * j.g2) / den)

    phi = 2.0 * np.pi * np.arange(n) / n
    vals = mod_t(phi)
    k = int(np.argmax(vals))
    best = float(vals[k])
    step = 2.0 * np.pi / n
    res = minimize_scalar(lambda p: -float(mod_t(p)[0]), bounds=(phi[k] - step, phi[k] + step), method="bounded",
                          options={"xatol": 1e-12})
    return max(best, float(-res.fun))


def boundedness_criterion_probe(
    f: HarmonicMap, theta: float, r_list, n_circle: int = 1024, margin: float = 1e-3, r_max: float | None = None
) -> BoundednessProbe:
    """Trajectory of Q(r) = ((1-r^2) max_{|z|=r} |T_{f,theta}| - 2) log(1/(1-r^2)).

    The verdict only reports whether the last three Q values sit below -2 - margin;
    a limsup is not decided numerically.
    """
    r_list = [float(r) for r in r_list]
    if any(b <= a for a, b in zip(r_list, r_list[1:])):
        raise ValueError("r_list must be increasing")
    f.check_radius(np.array(r_list, dtype=complex), r_max)
    traj = []
    for r in r_list:
        s = _circle_sup_T(f, theta, r, n_circle)
        w = 1.0 - r * r
        traj.append((r, (w * s - 2.0) * math.log(1.0 / w)))
    tail = [q for _, q in traj[-3:]]
    indicated = len(tail) == 3 and all(q < -2.0 - margin for q in tail)
    return BoundednessProbe(float(theta), traj, "criterion indicated" if indicated else "not indicated")
