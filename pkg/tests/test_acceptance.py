"""Acceptance gate: one test per criterion, at the stated tolerances."""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from harmap import analysis as an
from harmap.extremal import covering_radius, distortion_report, extremal_map
from harmap.fixtures import corpus, get_fixture
from harmap.preschwarzian import lipschitz_check, norm_estimate, univalence_radius
from harmap.report import TOL_CHECK
from harmap.verify import measured_norms, suite_chain_rule

criterion = pytest.mark.criterion


@criterion(1, "extremal norm in [1.98 lam, 2 lam (1 + 1e-6)], < 30 s each")
@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_criterion_01_extremal_norm(lam):
    t0 = time.perf_counter()
    est = norm_estimate(extremal_map(lam), r_max=0.999)
    elapsed = time.perf_counter() - t0
    assert 1.98 * lam <= est.value <= 2.0 * lam * (1 + 1e-6)
    assert elapsed < 30.0


@criterion(2, "covering radius of H_1 = 0.38629 +- 1e-4")
def test_criterion_02_covering_radius():
    assert abs(covering_radius(1.0) - 0.38629) <= 1e-4


@criterion(3, "distortion sharp on the real axis; fixtures satisfy all bounds")
def test_criterion_03_distortion():
    for lam in (0.5, 1.0, 2.0):
        rep = distortion_report(extremal_map(lam), lam, [0.3, 0.6, 0.9])
        for c in rep.checks:
            if c.check_id == "distortion_upper":
                assert c.locations[0] == pytest.approx(c.locations[0].real)
                assert -TOL_CHECK <= c.margin <= 1e-8
    norms = measured_norms()
    for fx in corpus():
        n = norms[fx.name]
        if n is None:
            continue
        rep = distortion_report(fx.map, n / 2, [0.3, 0.6, 0.9], univalent=fx.univalent)
        assert rep.passed, (fx.name, [(c.check_id, c.margin) for c in rep.failures()])
        assert {"distortion_lower", "distortion_upper", "growth_upper"} <= {c.check_id for c in rep.checks}


@criterion(4, "Lipschitz bound on 100 seeded pairs; radial equality case")
@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_criterion_04_lipschitz(lam):
    rng = np.random.default_rng(7)
    rad = 0.95 * np.sqrt(rng.random((2, 100)))
    ang = 2 * np.pi * rng.random((2, 100))
    z = rad * np.exp(1j * ang)
    th = 2 * np.pi * rng.random(100)
    rep = lipschitz_check(extremal_map(lam), lam, list(zip(z[0], z[1], th)))
    assert len(rep.checks) == 100 and rep.passed
    eq = lipschitz_check(extremal_map(1.0), 1.0, [(0.0, 0.5, 0.0)]).checks[0]
    assert eq.lhs == pytest.approx(math.log(3), abs=1e-9)
    assert abs(eq.margin) < 1e-6


@criterion(5, "chain-rule residual < 1e-9 on 100 seeded tuples")
def test_criterion_05_chain_rule():
    rep = suite_chain_rule(samples=100, seed=7)
    chain = [c for c in rep.checks if c.check_id == "chain_rule"]
    assert len(chain) == 100
    assert max(c.lhs for c in chain) < 1e-9


@criterion(6, "univalence radius monotone; probe 0.02233 +- 1e-4")
def test_criterion_06_univalence():
    vals = [univalence_radius(v).tanh_rho0 for v in (0, 1, 2, 4, 8)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert abs(univalence_radius(0.0, R=0.5).tanh_rho0 - 0.02233) <= 1e-4


@criterion(7, "k-QC integral-means lemma with positive margins (identity p=2 is an exact equality)")
def test_criterion_07_qc_means():
    radii = [0.3, 0.6, 0.8]
    for p in (1.0, 2.0, 3.0):
        rep = an.qc_means_inequality_check(get_fixture("identity").map, 0.0, p, radii)
        assert rep.passed
        for c in rep.checks:
            if p == 2.0:
                # I_2 = r^2 = 2 int_0^r rho d rho: equality, margin zero up to rounding
                assert abs(c.margin) <= 1e-12 * c.rhs
            else:
                assert c.margin > 0
    for p in (0.5, 1.0, 2.0):
        rep = an.qc_means_inequality_check(get_fixture("shear_k0.5").map, 0.5, p, radii)
        assert rep.passed and all(c.margin > 0 for c in rep.checks)


@criterion(8, "Bloch seminorm <= 4(1+|b1|) for norm <= 2; H_1 >= 3.9")
def test_criterion_08_bloch():
    norms = measured_norms()
    tested = 0
    for fx in corpus():
        n = norms[fx.name]
        if n is None or n > 2.0 + TOL_CHECK:
            continue
        b = an.bloch_seminorm(fx.map).value
        assert b <= 4 * (1 + abs(fx.map.b1)) + TOL_CHECK, fx.name
        tested += 1
    assert tested >= 5
    assert an.bloch_seminorm(extremal_map(1.0)).value >= 3.9


@criterion(9, "gamma(H_lam, N=5000) = lam - 1 +- 0.1; gamma(H_1) = 0 +- 0.05; slope <= alpha + 0.05")
def test_criterion_09_gamma():
    for lam in (1.5, 2.0, 3.0):
        s = an.gamma_estimate(extremal_map(lam, 5000)).slope
        assert abs(s - (lam - 1)) <= 0.1
        assert s <= an.alpha(lam) + 0.05
    s = an.gamma_estimate(extremal_map(1.0)).slope
    assert abs(s) <= 0.05
    assert s <= an.alpha(1.0) + 0.05


@criterion(10, "beta(H_2, p=1) <= alpha(2) + 0.1; Hardy verdicts for H_2")
def test_criterion_10_beta_and_hardy():
    h2 = extremal_map(2.0)
    assert an.beta_estimate(h2, 0.0, 1.0).slope <= an.alpha(2.0) + 0.1
    assert an.hardy_membership_probe(h2, 0.5).verdict == "bounded-trend"
    assert an.hardy_membership_probe(h2, 2.0).verdict == "growing"


@criterion(11, "threshold arithmetic exact; norm <= 4 fixtures bounded-trend at p = 0.3")
def test_criterion_11_hardy_substitute():
    t = an.hardy_threshold_report(2.0)
    assert t.p_qc == 1.0 and t.p_general == 1.0 / 3.0
    t = an.hardy_threshold_report(3.0)
    assert t.p_qc == 0.5 and t.p_general == 0.125
    p = 0.9 / (2.0**2 - 1.0)
    norms = measured_norms()
    tested = 0
    for fx in corpus():
        n = norms[fx.name]
        if n is None or n > 4.0 + TOL_CHECK:
            continue
        assert an.hardy_membership_probe(fx.map, p).verdict == "bounded-trend", fx.name
        tested += 1
    assert tested >= 8


def _cli(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "harmap.cli", *args], capture_output=True, cwd=cwd)


@criterion(12, "verify all --seed 7 is byte-identical across runs; malformed input exits 2")
def test_criterion_12_determinism_and_errors(tmp_path):
    a = _cli("verify", "all", "--seed", "7")
    b = _cli("verify", "all", "--seed", "7")
    assert a.returncode == 0, a.stderr.decode()
    assert a.stdout == b.stdout and len(a.stdout) > 0
    bad = tmp_path / "bad.json"
    bad.write_text('{"g": [[0, 0]]}')
    r = _cli("analyze", str(bad))
    assert r.returncode == 2
    assert b"h coefficients missing" in r.stderr
    bad.write_text("{not json")
    assert _cli("analyze", str(bad)).returncode == 2
