"""Integral means, Hardy and Bloch diagnostics, and growth-exponent fits.

Quantities defined by limits as r -> 1 or n -> infinity are reported as
finite-window fits with residuals; nothing here claims to decide a limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.optimize import minimize_scalar

from harmap import series as cs
from harmap.errors import DegenerateTail, MeanUndefined, RadiusError
from harmap.hmap import GridSpec, HarmonicMap, qc_constant_estimate
from harmap.preschwarzian import NormEstimate, _coordinate_refine, default_r_max
from harmap.report import TOL_CHECK, VerificationReport
from harmap.series import ComplexSeries

MEAN_TOL = 1e-7
NEG_P_FLOOR = 1e-6
MAX_CIRCLE_NODES = 1 << 24

# 1 - r log-spaced; beta fits use the shallow window, Hardy probes the deep one
BETA_WINDOW = tuple(1.0 - np.logspace(-1, -2, 11))
HARDY_WINDOW = tuple(1.0 - np.logspace(-2, -4, 11))
BOUNDED_TREND_RISE = 0.01


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    window: tuple
    residual_rms: float
    n_points: int

    def to_dict(self):
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "window": list(self.window),
            "residual_rms": self.residual_rms,
            "n_points": self.n_points,
        }


def fit_line(x, y, window) -> ExponentFit:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return ExponentFit(float(slope), float(intercept), tuple(float(w) for w in window),
                       float(np.sqrt(np.mean(resid**2))), int(x.shape[0]))


def _circle_sampler(f, r):
    """Vectorized phi -> value on |z| = r for a map, a series or a callable."""
    if isinstance(f, HarmonicMap):
        f.check_radius(r)
        return lambda phi: f.values(r * np.exp(1j * phi))
    if isinstance(f, ComplexSeries):
        if r > cs.trusted_radius(f) or r >= 1.0:
            raise RadiusError(f"outside trusted radius: r={r:.6g}")
        return lambda phi: cs.evaluate_derivs(f, r * np.exp(1j * phi))[0]
    return lambda phi: f(r * np.exp(1j * phi))


def integral_mean(f, p: float, r: float, n_circle: int = 256, tol: float = MEAN_TOL) -> float:
    """(1/2pi) int_0^{2pi} |f(r e^{i phi})|^p d phi by the trapezoidal rule.

    The node count starts at max(n_circle, 16/(1-r)) rounded up to a power of
    two and doubles (at least once) until successive sums agree to
    ``tol * max(1, I)``.
    """
    if r < 0 or r >= 1:
        raise RadiusError("r must lie in [0, 1)")
    sample = _circle_sampler(f, r)
    if p == 0:
        return 1.0
    n = max(int(n_circle), 8)
    need = 16.0 / max(1.0 - r, 1e-16)
    while n < need and n < MAX_CIRCLE_NODES:
        n *= 2

    def powered(vals):
        mod = np.abs(vals)
        if p < 0 and np.min(mod) <= NEG_P_FLOOR:
            raise MeanUndefined("mean undefined (zero on circle)")
        return mod**p

    total = float(np.sum(powered(sample(2.0 * np.pi * np.arange(n) / n))))
    prev = total / n
    while True:
        # the odd nodes of the doubled rule
        mid = 2.0 * np.pi * (np.arange(n) + 0.5) / n
        total += float(np.sum(powered(sample(mid))))
        n *= 2
        cur = total / n
        if abs(cur - prev) <= tol * max(1.0, abs(cur)) or n >= MAX_CIRCLE_NODES:
            return cur
        prev = cur


def max_modulus(f, r: float, n: int = 512) -> float:
    """max over |z| = r of |f|, from n samples polished by a bounded scalar search."""
    if r == 0:
        return float(abs(_circle_sampler(f, 0.0)(np.zeros(1))[0]))
    sample = _circle_sampler(f, r)
    phi = 2.0 * np.pi * np.arange(n) / n
    vals = np.abs(sample(phi))
    k = int(np.argmax(vals))
    best = float(vals[k])
    step = 2.0 * np.pi / n
    res = minimize_scalar(lambda t: -float(np.abs(sample(np.array([t]))[0])),
                          bounds=(phi[k] - step, phi[k] + step), method="bounded", options={"xatol": 1e-12})
    return max(best, float(-res.fun))


def qc_means_constant(k: float, p: float) -> float:
    return 2.0 * (1.0 + k * k) * (abs(p - 2.0) + 1.0) / (1.0 - k * k)


def qc_means_inequality_check(
    f: HarmonicMap, k: float, p: float, r_list, r_max: float | None = None, tol: float = TOL_CHECK
) -> VerificationReport:
    """I_p(r) <= 2(1+k^2)(|p-2|+1)/(1-k^2) int_0^r M(rho)^p / rho d rho for univalent k-QC f.

    Below rho = 1e-4 the integrand is replaced by its limit (|a1|+|b1|)^p rho^(p-1),
    integrated in closed form.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    if not 0.0 <= k < 1.0:
        raise ValueError("k must lie in [0, 1)")
    if f.h.coeffs[0] != 0 or f.g.coeffs[0] != 0:
        raise ValueError("map must satisfy h(0) = g(0) = 0")
    report = VerificationReport()
    subject = f"{f.name or 'f'} k={k:g} p={p:g}"
    qc = qc_constant_estimate(f, max(float(r) for r in r_list) if r_max is None else r_max)
    report.details["qc_estimate"] = qc
    if qc is None or qc > k + tol:
        report.add("qc_precondition", subject, -1.0 if qc is None else qc, k, -math.inf if qc is None else k - qc,
                   [], tol, note="measured dilatation exceeds k")
    C = qc_means_constant(k, p)
    m1 = abs(f.a1) + abs(f.b1)

    def integrand(rho):
        return max_modulus(f, rho, n=256) ** p / rho

    for r in r_list:
        r = float(r)
        f.check_radius(r, r_max)
        lhs = integral_mean(f, p, r)
        rho0 = min(1e-4, r)
        head = m1**p * rho0**p / p
        body = 0.0
        if r > rho0:
            body, _ = integrate.quad(integrand, rho0, r, epsabs=1e-12, epsrel=1e-10, limit=200)
        rhs = C * (head + body)
        report.add("qc_means", f"{subject} r={r:g}", lhs, rhs, rhs - lhs, [complex(r)], tol)
    return report


def bloch_seminorm(
    f: HarmonicMap, r_max: float | None = None, grid: GridSpec = GridSpec(), refine_passes: int = 2,
    tol_sup: float = 1e-3,
) -> NormEstimate:
    """Lower estimate of sup (1 - |z|^2)(|h'(z)| + |g'(z)|) with the norm-estimate protocol."""
    if r_max is None:
        r_max = default_r_max(f)
    r_max = f.check_radius(0.0, r_max)
    refine_passes = max(2, refine_passes)

    def sweep(gs):
        pts = gs.points(r_max)
        j = f.jet(pts)
        v = (1.0 - np.abs(pts) ** 2) * (np.abs(j.h1) + np.abs(j.g1))
        k = int(np.argmax(v))
        return float(v[k]), pts[k]

    history = []
    v, z = sweep(grid)
    history.append(v)
    best = (v, z)
    fine = grid.refined()
    v, z = sweep(fine)
    if v > best[0]:
        best = (v, z)
    history.append(best[0])

    def point(r, phi):
        zz = np.array([r * np.exp(1j * phi)])
        j = f.jet(zz)
        return float((1.0 - r * r) * (abs(j.h1[0]) + abs(j.g1[0])))

    steps = (r_max / (fine.n_radial - 1), 2 * np.pi / fine.n_angular)
    x, _, trail = _coordinate_refine(point, (abs(best[1]), float(np.angle(best[1]))), steps,
                                     ((0.0, r_max), (None, None)), refine_passes)
    for tv in trail:
        history.append(max(history[-1], tv))
    if history[-1] > best[0]:
        best = (history[-1], x[0] * np.exp(1j * x[1]))
    converged = abs(history[-1] - history[-2]) <= tol_sup * max(history[-1], 1e-300)
    return NormEstimate(
        value=float(history[-1]), r_max=float(r_max), grid=grid, theta_samples=0,
        refinement_passes=1 + refine_passes, converged=bool(converged), location=complex(best[1]),
        theta=None, history=tuple(history),
    )


def alpha(lam: float) -> float:
    """(sqrt(1 + 4 lam^2) - 1) / 2."""
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    return (math.sqrt(1.0 + 4.0 * lam * lam) - 1.0) / 2.0


def _slice_derivative(f: HarmonicMap, theta: float):
    e = np.exp(1j * theta)

    def fn(z):
        j = f.jet(z)
        return j.h1 + e * j.g1

    return fn


def beta_estimate(f: HarmonicMap, theta: float, p: float, r_window=None) -> ExponentFit:
    """Slope of log I_p(r, h' + e^{i theta} g') against log(1/(1-r)) over the window."""
    rs = np.asarray(BETA_WINDOW if r_window is None else r_window, dtype=float)
    if rs.shape[0] < 5:
        raise ValueError("beta fit needs at least 5 radii")
    f.check_radius(rs.astype(complex), None)
    deriv = _slice_derivative(f, theta)
    logs = [math.log(integral_mean(deriv, p, float(r))) for r in rs]
    return fit_line(np.log(1.0 / (1.0 - rs)), logs, (float(rs.min()), float(rs.max())))


def gamma_estimate(f: HarmonicMap, n_window=None) -> ExponentFit:
    """Slope of log(n (|a_n| + |b_n|)) against log n, zero coefficients skipped.

    The default window is [max(2, N/4), N] with N the truncation order.
    """
    N = f.order
    a = np.abs(f.h.padded(N).coeffs)
    b = np.abs(f.g.padded(N).coeffs)
    if n_window is None:
        if N < 2:
            raise DegenerateTail("degenerate tail")
        n_window = (max(2, N // 4), N)
    lo, hi = int(n_window[0]), int(n_window[1])
    if hi > N or lo < 1 or lo > hi:
        raise ValueError(f"coefficient window [{lo}, {hi}] not inside [1, {N}]")
    n = np.arange(lo, hi + 1)
    s = a[lo : hi + 1] + b[lo : hi + 1]
    keep = s > 0
    if np.count_nonzero(keep) < 2:
        raise DegenerateTail("degenerate tail")
    n, s = n[keep], s[keep]
    return fit_line(np.log(n), np.log(n * s), (lo, hi))


@dataclass(frozen=True)
class HardyThresholds:
    p_qc: float
    p_general: float
    note: str = ""

    def to_dict(self):
        def enc(x):
            return "inf" if math.isinf(x) else x

        return {"p_qc": enc(self.p_qc), "p_general": enc(self.p_general), "note": self.note}


def hardy_threshold_report(lam: float, k: float | None = None) -> HardyThresholds:
    """Hardy exponents below which membership in h^p is guaranteed.

    ``p_qc`` applies to univalent k-quasiconformal members, ``p_general`` to the
    whole class; both are infinite for lam <= 1.
    """
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if k is not None and not 0.0 <= k < 1.0:
        raise ValueError("k must lie in [0, 1)")
    if lam < 1:
        return HardyThresholds(math.inf, math.inf, "bounded: every member is bounded for lambda < 1")
    if lam == 1:
        return HardyThresholds(math.inf, math.inf, "threshold 1/(lambda^2-1) read as infinite at lambda = 1")
    note = "" if k is None else f"p_qc applies to {k:g}-quasiconformal univalent members"
    return HardyThresholds(1.0 / (lam - 1.0), 1.0 / (lam * lam - 1.0), note)


@dataclass(frozen=True)
class HardyProbe:
    p: float
    verdict: str
    samples: list  # [(r, M_p(r))]
    growth: ExponentFit  # slope of log I_p against log(1/(1-r))
    rise: float  # relative increase over the last three samples

    def to_dict(self):
        return {"p": self.p, "verdict": self.verdict, "rise": self.rise, "samples": [[r, m] for r, m in self.samples],
                "growth": self.growth.to_dict()}


def hardy_membership_probe(f, p: float, r_window=None) -> HardyProbe:
    """Sample M_p(r, f) = I_p(r, f)^(1/p) over the window.

    Verdict "bounded-trend" when the last three samples rise by less than 1%
    in total, otherwise "growing".
    """
    if p <= 0:
        raise ValueError("p must be positive")
    rs = sorted(float(r) for r in (HARDY_WINDOW if r_window is None else r_window))
    if len(rs) < 3:
        raise ValueError("Hardy probe needs at least 3 radii")
    means = [integral_mean(f, p, r) for r in rs]
    mp = [m ** (1.0 / p) for m in means]
    rise = (mp[-1] - mp[-3]) / mp[-3] if mp[-3] > 0 else (math.inf if mp[-1] > 0 else 0.0)
    verdict = "bounded-trend" if rise < BOUNDED_TREND_RISE else "growing"
    x = np.log(1.0 / (1.0 - np.array(rs)))
    growth = fit_line(x, np.log(means), (rs[0], rs[-1]))
    return HardyProbe(float(p), verdict, list(zip(rs, mp)), growth, float(rise))
