"""Verification suites run by ``harmap verify``; each returns a VerificationReport."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from harmap import analysis as an
from harmap.errors import HarmapError
from harmap.extremal import (
    boundary_pairs,
    build_extremal,
    covering_radius,
    distortion_report,
    extremal_map,
    holder_check,
)
from harmap.fixtures import corpus, get_fixture, shear_map
from harmap.hmap import HarmonicMap, identity_map
from harmap.hyperbolic import MoebiusPullback
from harmap.preschwarzian import (
    chain_rule_identity_check,
    lipschitz_check,
    norm_estimate,
    univalence_radius,
)
from harmap.report import TOL_CHECK, VerificationReport
from harmap.series import DEFAULT_ORDER

SUITES = ("extremal", "distortion", "lipschitz", "chain-rule", "qc-means", "exponents")
EXTREMAL_LAMBDAS = (0.5, 1.0, 2.0)
R_MAX = 0.999
NORM_BAND = 0.01
DISTORTION_RADII = (0.3, 0.6, 0.9)
PAIR_RADIUS = 0.95
CHAIN_RULE_TOL = 1e-9
UNIVALENCE_NORMS = (0.0, 1.0, 2.0, 4.0, 8.0)
PROBE_TANH = 0.02233


@lru_cache(maxsize=4)
def measured_norms(order: int = DEFAULT_ORDER) -> dict:
    """name -> norm estimate at r_max = 0.999 (None if not sense-preserving)."""
    out = {}
    for fx in corpus(order):
        try:
            out[fx.name] = norm_estimate(fx.map, r_max=R_MAX).value
        except HarmapError:
            out[fx.name] = None
    return out


def _random_disk(rng, n, radius):
    r = radius * np.sqrt(rng.random(n))
    return r * np.exp(2j * np.pi * rng.random(n))


def suite_extremal(order=DEFAULT_ORDER, **_):
    rep = VerificationReport()
    for lam in EXTREMAL_LAMBDAS:
        est = norm_estimate(extremal_map(lam, order), r_max=R_MAX)
        lo, hi = (1 - NORM_BAND) * 2 * lam, 2 * lam * (1 + 1e-6)
        rep.add("extremal_norm", f"H_{lam:g}", est.value, 2 * lam, min(est.value - lo, hi - est.value),
                [est.location], note=f"band [{lo:.6g}, {hi:.6g}]")
        res = build_extremal(lam, order).recurrence_residual()
        rep.add("extremal_recurrence", f"H_{lam:g}", res, 1e-12, 1e-12 - res, [], 0.0)
    c = covering_radius(1.0)
    rep.add("covering_radius", "H_1", c, 2 * math.log(2) - 1, 1e-4 - abs(c - (2 * math.log(2) - 1)), [], 0.0)
    norms = measured_norms(order)
    for fx in corpus(order):
        known = fx.value("norm")
        if known is None:
            continue
        est = norms[fx.name]
        band = NORM_BAND * known + TOL_CHECK
        rep.add("fixture_norm", fx.name, est, known, band - abs(est - known), [], 0.0)
    return rep


def suite_distortion(order=DEFAULT_ORDER, **_):
    """Every fixture against lambda = (its norm)/2, worst case per radius."""
    rep = VerificationReport()
    norms = measured_norms(order)
    for fx in corpus(order):
        norm = fx.value("norm")
        if norm is None:
            norm = norms[fx.name]
        if norm is None:
            continue
        rep.extend(distortion_report(fx.map, norm / 2, DISTORTION_RADII, univalent=fx.univalent))
    return rep


def suite_lipschitz(order=DEFAULT_ORDER, samples=100, seed=7, **_):
    rng = np.random.default_rng(seed)
    rep = VerificationReport()
    skipped = []
    for fx in corpus(order):
        norm = fx.value("norm")
        if norm is None:
            continue
        z1 = _random_disk(rng, samples, PAIR_RADIUS)
        z2 = _random_disk(rng, samples, PAIR_RADIUS)
        th = 2 * np.pi * rng.random(samples)
        sub = lipschitz_check(fx.map, norm / 2, list(zip(z1, z2, th)))
        skipped += sub.details["skipped"]
        rep.checks.extend(sub.checks)
    eq = lipschitz_check(extremal_map(1.0, order), 1.0, [(0.0, 0.5, 0.0)])
    c = eq.checks[0]
    rep.add("lipschitz_equality", "H_1 radial pair (0, 0.5)", c.lhs, c.rhs, 1e-6 - abs(c.margin), c.locations, 0.0)
    depths = np.logspace(-1, -6, 16)
    rep.extend(holder_check(extremal_map(0.5, order), 0.5, boundary_pairs(1.0, depths)))
    rep.details["skipped"] = skipped
    return rep


def suite_chain_rule(order=DEFAULT_ORDER, samples=100, seed=7, **_):
    """Pullback identity on random tuples, plus the univalence-radius checks."""
    rng = np.random.default_rng(seed)
    rep = VerificationReport()
    fixtures = corpus(order)
    for _ in range(samples):
        fx = fixtures[int(rng.integers(len(fixtures)))]
        a = complex(_random_disk(rng, 1, 0.9)[0])
        R = float(0.05 + 0.9 * rng.random())
        xi = complex(_random_disk(rng, 1, 0.9)[0])
        theta = float(2 * np.pi * rng.random())
        T = MoebiusPullback(a, R)
        try:
            res = chain_rule_identity_check(fx.map, T, theta, xi)
        except HarmapError as exc:
            rep.details.setdefault("skipped", []).append({"fixture": fx.name, "reason": str(exc)})
            continue
        rep.add("chain_rule", f"{fx.name} theta={theta:.6g}", res, CHAIN_RULE_TOL, CHAIN_RULE_TOL - res, [xi], 0.0)
    certs = [univalence_radius(v) for v in UNIVALENCE_NORMS]
    for lo, hi in zip(certs, certs[1:]):
        rep.add("univalence_monotone", f"lambda_norm {lo.lambda_norm:g} -> {hi.lambda_norm:g}",
                hi.tanh_rho0, lo.tanh_rho0, lo.tanh_rho0 - hi.tanh_rho0, [], 0.0,
                passed=hi.tanh_rho0 < lo.tanh_rho0)
    probe = univalence_radius(0.0, R=0.5)
    rep.add("univalence_probe", "lambda_norm 0, R 0.5", probe.tanh_rho0, PROBE_TANH,
            1e-4 - abs(probe.tanh_rho0 - PROBE_TANH), [], 0.0)
    return rep


def suite_qc_means(order=DEFAULT_ORDER, **_):
    """k-QC integral-means inequality, plus the Bloch bound on fixtures with norm <= 2."""
    rep = VerificationReport()
    radii = (0.3, 0.6, 0.8)
    ident = identity_map(1)
    for p in (1.0, 2.0, 3.0):
        rep.extend(an.qc_means_inequality_check(ident, 0.0, p, radii))
    shear = shear_map(0.5)
    for p in (0.5, 1.0, 2.0):
        rep.extend(an.qc_means_inequality_check(shear, 0.5, p, radii))
    norms = measured_norms(order)
    for fx in corpus(order):
        n = norms[fx.name]
        if n is None or n > 2.0 + TOL_CHECK:
            continue
        b = an.bloch_seminorm(fx.map, r_max=R_MAX).value
        bound = 4.0 * (1.0 + abs(fx.map.b1))
        rep.add("bloch_bound", fx.name, b, bound, bound - b, [])
    b = an.bloch_seminorm(extremal_map(1.0, order), r_max=R_MAX).value
    rep.add("bloch_sharp", "H_1", b, 3.9, b - 3.9, [], 0.0)
    return rep


def suite_exponents(order=DEFAULT_ORDER, **_):
    rep = VerificationReport()
    for lam in (1.5, 2.0, 3.0):
        fit = an.gamma_estimate(extremal_map(lam, 5000))
        rep.add("gamma", f"H_{lam:g} N=5000", fit.slope, lam - 1, 0.1 - abs(fit.slope - (lam - 1)), [], 0.0)
        rep.add("gamma_alpha_bound", f"H_{lam:g} N=5000", fit.slope, an.alpha(lam) + 0.05,
                an.alpha(lam) + 0.05 - fit.slope, [], 0.0)
    fit = an.gamma_estimate(extremal_map(1.0, order))
    rep.add("gamma", "H_1", fit.slope, 0.0, 0.05 - abs(fit.slope), [], 0.0)
    h2 = extremal_map(2.0, order)
    fit = an.beta_estimate(h2, 0.0, 1.0)
    rep.add("beta_alpha_bound", "H_2 p=1", fit.slope, an.alpha(2.0) + 0.1, an.alpha(2.0) + 0.1 - fit.slope, [], 0.0)
    for p, expect in ((0.5, "bounded-trend"), (2.0, "growing")):
        pr = an.hardy_membership_probe(h2, p)
        margin = an.BOUNDED_TREND_RISE - pr.rise
        rep.add("hardy_verdict", f"H_2 p={p:g} expect {expect}", pr.rise, an.BOUNDED_TREND_RISE,
                margin if expect == "bounded-trend" else -margin, [], 0.0, passed=pr.verdict == expect)
    t = an.hardy_threshold_report(2.0)
    rep.add("hardy_thresholds", "lambda=2", t.p_qc, 1.0, -abs(t.p_qc - 1.0), [], 0.0)
    rep.add("hardy_thresholds", "lambda=2 general", t.p_general, 1 / 3, -abs(t.p_general - 1 / 3), [], 0.0)
    p = 0.9 / (2.0**2 - 1.0)
    norms = measured_norms(order)
    for fx in corpus(order):
        n = norms[fx.name]
        if n is None or n > 4.0 + TOL_CHECK:
            continue
        pr = an.hardy_membership_probe(fx.map, p)
        rep.add("hardy_substitute", f"{fx.name} p={p:g}", pr.rise, an.BOUNDED_TREND_RISE,
                an.BOUNDED_TREND_RISE - pr.rise, [], 0.0, passed=pr.verdict == "bounded-trend")
    return rep


_RUNNERS = {
    "extremal": suite_extremal,
    "distortion": suite_distortion,
    "lipschitz": suite_lipschitz,
    "chain-rule": suite_chain_rule,
    "qc-means": suite_qc_means,
    "exponents": suite_exponents,
}


def run_suite(name: str, order=DEFAULT_ORDER, samples=100, seed=7) -> VerificationReport:
    if name == "all":
        rep = VerificationReport()
        for s in SUITES:
            sub = _RUNNERS[s](order=order, samples=samples, seed=seed)
            rep.checks.extend(sub.checks)
            for k, v in sub.details.items():
                rep.details[f"{s}.{k}"] = v
        return rep
    if name not in _RUNNERS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    return _RUNNERS[name](order=order, samples=samples, seed=seed)


__all__ = ["SUITES", "run_suite", "measured_norms", "get_fixture", "HarmonicMap"]
