"""Pre-Schwarzian derivatives of phase slices h + e^{i theta} g and their hyperbolic sup-norm.

The norm is the supremum over the disk and over all phases of
(1 - |z|^2) |h'' + e^{i theta} g''| / |h' + e^{i theta} g'|. It is estimated
from below on a polar grid, refined once by doubling, then polished by
coordinate-wise bounded scalar searches around the best sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from harmap import kernels
from harmap.errors import NotLocallyUnivalent, NotSensePreserving
from harmap.hmap import GridSpec, HarmonicMap
from harmap.hyperbolic import MoebiusPullback, hyperbolic_distance, pullback_apply
from harmap.report import TOL_CHECK, VerificationReport
from harmap.series import EPS_DIV

TOL_SUP = 1e-3
DEFAULT_N_THETA = 256
R_MAX_CLOSED_FORM = 0.999
# relative |slice'| below which a segment is taken to pass through a zero
ZERO_REL = 1e-9
_GAUSS_X, _GAUSS_W = np.polynomial.legendre.leggauss(16)


@dataclass(frozen=True)
class NormEstimate:
    """Lower estimate of a sup-type functional with its sampling provenance."""

    value: float
    r_max: float
    grid: GridSpec
    theta_samples: int
    refinement_passes: int
    converged: bool
    location: complex = 0j
    theta: float | None = None
    history: tuple = field(default=())

    def to_dict(self):
        out = {
            "value": self.value,
            "r_max": self.r_max,
            "grid": str(self.grid),
            "theta_samples": self.theta_samples,
            "refinement_passes": self.refinement_passes,
            "converged": self.converged,
            "location": [self.location.real, self.location.imag],
            "history": list(self.history),
        }
        if self.theta is not None:
            out["theta"] = self.theta
        return out


def default_r_max(f: HarmonicMap) -> float:
    """0.999 for closed-form or polynomial maps, else the tail-bound radius."""
    return min(f.trusted_radius(), R_MAX_CLOSED_FORM)


def _phases(n):
    t = 2.0 * np.pi * np.arange(n) / n
    return t, np.exp(1j * t)


def preschwarzian_at(f: HarmonicMap, theta: float, z, r_max: float | None = None):
    """(h'' + e^{i theta} g'') / (h' + e^{i theta} g') at ``z``."""
    f.check_radius(z, r_max)
    j = f.jet(np.atleast_1d(np.asarray(z, dtype=np.complex128)))
    e = np.exp(1j * theta)
    den = j.h1 + e * j.g1
    if np.any(np.abs(den) <= EPS_DIV):
        raise NotLocallyUnivalent("slice derivative vanishes")
    out = (j.h2 + e * j.g2) / den
    return complex(out[0]) if np.ndim(z) == 0 else out.reshape(np.shape(z))


def _weighted_sweep(f, pts, phases):
    """Best (value, point index, phase index) of (1-|z|^2)|T| over pts x phases."""
    j = f.jet(pts)
    ah, ag = np.abs(j.h1), np.abs(j.g1)
    bad = ah * ah - ag * ag <= 0.0
    if np.any(bad):
        z = pts[np.argmax(bad)]
        raise NotSensePreserving(f"not sense-preserving on the grid (J <= 0 at z={z:.6g})")
    if np.any(ah - ag <= EPS_DIV):
        raise NotLocallyUnivalent("not locally univalent at sampled point")
    w = 1.0 - np.abs(pts) ** 2
    vals, idx = kernels.theta_sup(j.h1, j.h2, j.g1, j.g2, w, phases)
    k = int(np.argmax(vals))
    return float(vals[k]), k, int(idx[k])


def _point_value(f, r, phi, theta):
    z = np.array([r * np.exp(1j * phi)])
    j = f.jet(z)
    ah, ag = abs(j.h1[0]), abs(j.g1[0])
    if ah * ah - ag * ag <= 0.0:
        raise NotSensePreserving(f"not sense-preserving at z={z[0]:.6g}")
    e = np.exp(1j * theta)
    return (1.0 - r * r) * abs(j.h2[0] + e * j.g2[0]) / abs(j.h1[0] + e * j.g1[0])


def _maximize_1d(fun, lo, hi, x0):
    """Bounded scalar maximization on [lo, hi]; never returns worse than x0."""
    best_x, best_v = x0, fun(x0)
    if hi - lo > 0:
        res = minimize_scalar(lambda x: -fun(x), bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
        if -res.fun > best_v:
            best_x, best_v = float(res.x), float(-res.fun)
    return best_x, best_v


def _coordinate_refine(objective, x, steps, bounds, passes):
    """Coordinate-wise bounded searches around ``x``; returns (x, value, per-pass values)."""
    x = list(x)
    value = objective(*x)
    trail = []
    for _ in range(passes):
        for i, (step, (lo_b, hi_b)) in enumerate(zip(steps, bounds)):
            lo, hi = x[i] - step, x[i] + step
            if lo_b is not None:
                lo, hi = max(lo, lo_b), min(hi, hi_b)

            def along(t, i=i):
                y = list(x)
                y[i] = t
                return objective(*y)

            x[i], v = _maximize_1d(along, lo, hi, x[i])
            value = max(value, v)
        trail.append(value)
    return x, value, trail


def norm_estimate(
    f: HarmonicMap,
    r_max: float | None = None,
    grid: GridSpec = GridSpec(),
    n_theta: int = DEFAULT_N_THETA,
    refine_passes: int = 2,
    tol_sup: float = TOL_SUP,
) -> NormEstimate:
    """Lower estimate of sup over |z| <= r_max and all phases of (1-|z|^2)|T_{f,theta}(z)|.

    Raises NotSensePreserving when J_f <= 0 at a sample.
    """
    if r_max is None:
        r_max = default_r_max(f)
    r_max = f.check_radius(0.0, r_max)
    refine_passes = max(2, refine_passes)
    history = []

    thetas, phases = _phases(n_theta)
    pts = grid.points(r_max)
    v, k, jt = _weighted_sweep(f, pts, phases)
    history.append(v)
    best = (v, pts[k], thetas[jt])

    fine = grid.refined()
    thetas2, phases2 = _phases(2 * n_theta)
    pts2 = fine.points(r_max)
    v2, k2, jt2 = _weighted_sweep(f, pts2, phases2)
    if v2 > best[0]:
        best = (v2, pts2[k2], thetas2[jt2])
    history.append(best[0])

    z0 = best[1]
    x0 = (abs(z0), float(np.angle(z0)), best[2])
    steps = (r_max / (fine.n_radial - 1), 2 * np.pi / fine.n_angular, np.pi / n_theta)
    bounds = ((0.0, r_max), (None, None), (None, None))
    x, v3, trail = _coordinate_refine(lambda r, p, t: _point_value(f, r, p, t), x0, steps, bounds, refine_passes)
    for tv in trail:
        history.append(max(history[-1], tv))
    if history[-1] > best[0]:
        best = (history[-1], x[0] * np.exp(1j * x[1]), x[2] % (2 * np.pi))

    converged = abs(history[-1] - history[-2]) <= tol_sup * max(history[-1], 1e-300) or history[-1] == 0.0
    return NormEstimate(
        value=float(history[-1]),
        r_max=float(r_max),
        grid=grid,
        theta_samples=n_theta,
        refinement_passes=1 + refine_passes,
        converged=bool(converged),
        location=complex(best[1]),
        theta=float(best[2]),
        history=tuple(float(h) for h in history),
    )


def slice_norm_profile(
    f: HarmonicMap,
    thetas,
    r_max: float | None = None,
    grid: GridSpec = GridSpec(),
    refine_passes: int = 2,
):
    """[(theta, A(theta))] with A(theta) the sup over the disk for one fixed phase."""
    if r_max is None:
        r_max = default_r_max(f)
    r_max = f.check_radius(0.0, r_max)
    fine = grid.refined()
    pts = np.concatenate([grid.points(r_max), fine.points(r_max)])
    j = f.jet(pts)
    ah, ag = np.abs(j.h1), np.abs(j.g1)
    if np.any(ah * ah - ag * ag <= 0.0):
        raise NotSensePreserving("not sense-preserving on the grid")
    w = 1.0 - np.abs(pts) ** 2
    steps = (r_max / (fine.n_radial - 1), 2 * np.pi / fine.n_angular)
    out = []
    for theta in thetas:
        theta = float(theta)
        vals, _ = kernels.theta_sup(j.h1, j.h2, j.g1, j.g2, w, np.array([np.exp(1j * theta)]))
        k = int(np.argmax(vals))
        x0 = (abs(pts[k]), float(np.angle(pts[k])))
        _, v, _ = _coordinate_refine(
            lambda r, p: _point_value(f, r, p, theta), x0, steps, ((0.0, r_max), (None, None)), refine_passes
        )
        out.append((theta, max(float(vals[k]), v)))
    return out


def _segment_increment(f, z1, z2, theta):
    """Integral of T_{f,theta} along [z1, z2] by composite Gauss-Legendre.

    Panels are no longer than a quarter of the segment's distance to the
    unit circle; at least 4 panels (64 nodes). Returns the increment and the
    smallest |slice'| on the segment relative to its largest node value.
    """
    length = abs(z2 - z1)
    gap = 1.0 - max(abs(z1), abs(z2))
    n_panels = int(min(4096, max(4, math.ceil(length / (0.25 * gap)))))
    edges = np.linspace(0.0, 1.0, n_panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    s = (edges[:-1, None] + half[:, None] * (_GAUSS_X[None, :] + 1.0)).ravel()
    w = (half[:, None] * _GAUSS_W[None, :]).ravel()
    zeta = z1 + s * (z2 - z1)
    j = f.jet(zeta)
    e = np.exp(1j * theta)
    den = j.h1 + e * j.g1
    t = (j.h2 + e * j.g2) / den
    # nodes can straddle a zero; polish the smallest |den| along the segment
    mod = np.abs(den)
    k = int(np.argmin(mod))
    width = 1.0 / n_panels

    def den_at(u):
        jj = f.jet(np.array([z1 + u * (z2 - z1)]))
        return float(abs(jj.h1[0] + e * jj.g1[0]))

    res = minimize_scalar(den_at, bounds=(max(0.0, s[k] - width), min(1.0, s[k] + width)), method="bounded",
                          options={"xatol": 1e-14})
    min_den = min(float(mod[k]), float(res.fun))
    return complex(np.dot(w, t) * (z2 - z1)), min_den / max(1.0, float(np.max(mod)))


def lipschitz_check(
    f: HarmonicMap, lam: float, pairs, r_max: float | None = None, tol: float = TOL_CHECK
) -> VerificationReport:
    """Check |u_theta(z1) - u_theta(z2)| <= 2 lam d_h(z1, z2) for each (z1, z2, theta).

    u_theta = log(h' + e^{i theta} g') is differenced by integrating its
    derivative T_{f,theta} along the straight segment, so no branch is chosen.
    """
    report = VerificationReport()
    skipped = []
    for z1, z2, theta in pairs:
        z1, z2, theta = complex(z1), complex(z2), float(theta)
        f.check_radius(np.array([z1, z2]), r_max)
        subject = f"{f.name or 'f'} theta={theta:.6g}"
        if z1 == z2:
            report.add("lipschitz", subject, 0.0, 0.0, 0.0, [z1, z2], tol)
            continue
        du, min_den = _segment_increment(f, z1, z2, theta)
        if min_den <= ZERO_REL:
            skipped.append({"z1": [z1.real, z1.imag], "z2": [z2.real, z2.imag], "theta": theta,
                            "reason": "segment meets a zero of the slice derivative"})
            continue
        lhs = abs(du)
        rhs = 2.0 * lam * hyperbolic_distance(z1, z2)
        report.add("lipschitz", subject, lhs, rhs, rhs - lhs, [z1, z2], tol)
    report.details["skipped"] = skipped
    return report


def chain_rule_identity_check(
    f: HarmonicMap, T: MoebiusPullback, theta: float, xi: complex, r_max: float | None = None
) -> float:
    """|LHS - RHS| for the pre-Schwarzian of F = f o T against T_{f,theta}(T(xi)) T'(xi) + T''/T'.

    The left side is assembled from H' = h'(T) T' and H'' = h''(T) T'^2 + h'(T) T''
    (likewise for G); nothing is recomposed as a series.
    """
    w, d1, ratio = pullback_apply(T, complex(xi))
    f.check_radius(np.array([xi, w]), r_max)
    d2 = ratio * d1
    j = f.jet(np.array([w]))
    h1, h2, g1, g2 = complex(j.h1[0]), complex(j.h2[0]), complex(j.g1[0]), complex(j.g2[0])
    e = np.exp(1j * theta)
    H1, H2 = h1 * d1, h2 * d1 * d1 + h1 * d2
    G1, G2 = g1 * d1, g2 * d1 * d1 + g1 * d2
    den_l = H1 + e * G1
    den_r = h1 + e * g1
    if abs(den_l) <= EPS_DIV or abs(den_r) <= EPS_DIV:
        raise NotLocallyUnivalent("slice derivative vanishes")
    lhs = (H2 + e * G2) / den_l
    rhs = (h2 + e * g2) / den_r * d1 + ratio
    return float(abs(lhs - rhs))


@dataclass(frozen=True)
class UnivalenceCertificate:
    """Hyperbolic radius rho0 on whose disks f is univalent, given ||T_f|| <= lambda_norm."""

    lambda_norm: float
    R_star: float
    k0: float
    rho0: float
    tanh_rho0: float

    def to_dict(self):
        return {
            "lambda_norm": self.lambda_norm,
            "R_star": self.R_star,
            "k0": self.k0,
            "rho0": self.rho0,
            "tanh_rho0": self.tanh_rho0,
        }


_CONVEX = 2.0 - math.sqrt(3.0)


def _certified_tanh(lambda_norm, R):
    k0 = lambda_norm + 2.0 * R / (1.0 - R)
    s = _CONVEX * 3.0 ** (-k0 / 2.0) / 2.0
    return k0, min(s, 1.0) * R


def univalence_radius(lambda_norm: float, R: float | None = None, tol: float = 1e-6) -> UnivalenceCertificate:
    """Certified univalence radius from a pre-Schwarzian norm bound.

    With scale R of the pullback, k0 = lambda_norm + 2R/(1-R) and
    tanh(rho0) = min((2 - sqrt 3) 3^(-k0/2) / 2, 1) * R. ``R=None`` maximizes
    tanh(rho0) over R in (0, 1); a given R is used as is.
    """
    lambda_norm = float(lambda_norm)
    if not math.isfinite(lambda_norm) or lambda_norm < 0:
        raise ValueError("lambda_norm must be finite and nonnegative")
    if R is None:
        # log tanh(rho0) is concave in R, so a bounded search finds the maximum
        res = minimize_scalar(
            lambda r: -math.log(_certified_tanh(lambda_norm, r)[1]),
            bounds=(1e-9, 1.0 - 1e-9),
            method="bounded",
            options={"xatol": tol},
        )
        R = float(res.x)
    elif not 0.0 < R < 1.0:
        raise ValueError("R must lie in (0, 1)")
    k0, t = _certified_tanh(lambda_norm, R)
    return UnivalenceCertificate(lambda_norm, float(R), float(k0), float(math.atanh(t)), float(t))
