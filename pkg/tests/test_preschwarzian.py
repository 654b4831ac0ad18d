import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmap.errors import NotLocallyUnivalent, NotSensePreserving, RadiusError
from harmap.extremal import extremal_map
from harmap.fixtures import harmonic_koebe_map, shear_map
from harmap.hmap import GridSpec, HarmonicMap, affine_shear, identity_map
from harmap.hyperbolic import MoebiusPullback
from harmap.preschwarzian import (
    chain_rule_identity_check,
    lipschitz_check,
    norm_estimate,
    preschwarzian_at,
    slice_norm_profile,
    univalence_radius,
)
from harmap.series import ComplexSeries


def exact_phase_sup(f, z):
    """Oracle: (1-|z|^2) max_theta |T| from the Moebius image of the unit circle."""
    j = f.jet(z)
    A, B, C, D = j.h2, j.g2, j.h1, j.g1
    centre = (A * np.conj(C) - B * np.conj(D)) / (np.abs(C) ** 2 - np.abs(D) ** 2)
    radius = np.abs((A + B) / (C + D) - centre)
    return (1 - np.abs(z) ** 2) * (np.abs(centre) + radius)


def dense_oracle(f, r_max, nr=600, na=720):
    r = np.linspace(0, r_max, nr)
    z = (r[:, None] * np.exp(2j * np.pi * np.arange(na) / na)[None, :]).ravel()
    return float(np.max(exact_phase_sup(f, z)))


def test_identity_norm_is_zero():
    est = norm_estimate(identity_map())
    assert est.value == 0.0
    assert est.converged


@pytest.mark.parametrize("lam", [0.5, 1.0])
def test_extremal_norm_matches_weight_at_rmax(lam):
    # (1-r^2) * 2 lam / (1 - r^2) = 2 lam on the real axis
    est = norm_estimate(extremal_map(lam), r_max=0.999)
    assert est.value == pytest.approx(2 * lam, rel=1e-12)


def test_shear_norm_derived_value():
    est = norm_estimate(shear_map(0.5), r_max=0.999)
    assert est.value == pytest.approx(4 - 2 * math.sqrt(3), abs=1e-9)


@pytest.mark.parametrize(
    "f",
    [affine_shear(extremal_map(2.0), 0.4 + 0.3j), harmonic_koebe_map(), shear_map(0.25)],
    ids=["affine_H2", "harmonic_koebe", "shear"],
)
def test_norm_estimate_against_dense_exact_oracle(f):
    est = norm_estimate(f, r_max=0.99)
    oracle = dense_oracle(f, 0.99)
    # the refined estimate may sit between the oracle's nodes, never far above them
    assert est.value >= oracle * (1 - 1e-3)
    assert est.value <= dense_oracle(f, 0.99, nr=2000, na=2000) * (1 + 1e-6)


def test_history_is_monotone():
    est = norm_estimate(harmonic_koebe_map(), r_max=0.95, grid=GridSpec(16, 32))
    assert list(est.history) == sorted(est.history)
    assert est.refinement_passes >= 3


def test_not_sense_preserving():
    f = HarmonicMap(ComplexSeries([0, 1], True), ComplexSeries([0, 0, 2], True))
    with pytest.raises(NotSensePreserving, match="not sense-preserving"):
        norm_estimate(f, r_max=0.9)


def test_rmax_beyond_trust():
    geo = HarmonicMap(ComplexSeries(np.r_[0.0, np.ones(64)]), ComplexSeries.zero(64))
    with pytest.raises(RadiusError):
        norm_estimate(geo, r_max=0.99)


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 0.9), st.floats(0, 2 * np.pi), st.floats(0, 2 * np.pi))
def test_preschwarzian_is_log_derivative(r, phi, theta):
    f = affine_shear(extremal_map(1.5), 0.3j)
    z = r * np.exp(1j * phi)
    e = np.exp(1j * theta)

    def slice_d(w):
        j = f.jet(np.array([w]))
        return j.h1[0] + e * j.g1[0]

    h = 1e-6
    fd = (np.log(slice_d(z + h)) - np.log(slice_d(z - h))) / (2 * h)
    assert preschwarzian_at(f, theta, z) == pytest.approx(fd, rel=1e-6, abs=1e-6)


def test_preschwarzian_at_vanishing_derivative():
    f = HarmonicMap(ComplexSeries([0, 0, 1], True), ComplexSeries.zero())
    with pytest.raises(NotLocallyUnivalent):
        preschwarzian_at(f, 0.0, 0.0)


def test_slice_profile_for_shear():
    prof = slice_norm_profile(shear_map(0.5), [0.0, math.pi], r_max=0.99)
    for _, val in prof:
        assert val == pytest.approx(4 - 2 * math.sqrt(3), rel=1e-6)


def test_lipschitz_equality_case():
    rep = lipschitz_check(extremal_map(1.0), 1.0, [(0.0, 0.5, 0.0)])
    c = rep.checks[0]
    assert c.lhs == pytest.approx(math.log(3), abs=1e-12)
    assert abs(c.margin) < 1e-6


def test_lipschitz_coincident_and_failing():
    rep = lipschitz_check(extremal_map(2.0), 2.0, [(0.3j, 0.3j, 1.0)])
    assert rep.checks[0].margin == 0 and rep.passed
    # lambda too small for H_2: the check must fail with a witness pair
    bad = lipschitz_check(extremal_map(2.0), 1.0, [(0.0, 0.9, 0.0)])
    assert not bad.passed and len(bad.checks[0].locations) == 2


def test_lipschitz_skips_zero_of_slice():
    f = HarmonicMap(ComplexSeries([0, 0, 1], True), ComplexSeries.zero())
    rep = lipschitz_check(f, 10.0, [(-0.5, 0.5, 0.0)])
    assert len(rep.details["skipped"]) == 1 and not rep.checks


@settings(max_examples=40, deadline=None)
@given(st.floats(-0.8, 0.8), st.floats(-0.5, 0.5), st.floats(0.05, 0.95), st.floats(0, 0.8),
       st.floats(0, 2 * np.pi))
def test_chain_rule_identity(ax, ay, R, xr, theta):
    f = harmonic_koebe_map()
    T = MoebiusPullback(complex(ax, ay), R)
    assert chain_rule_identity_check(f, T, theta, xr * np.exp(0.3j)) < 1e-9


def test_univalence_probe_value():
    # tanh rho0 at lambda_norm = 0 and R = 1/2, unoptimized
    cert = univalence_radius(0.0, R=0.5)
    assert cert.tanh_rho0 == pytest.approx(0.02233, abs=1e-4)
    assert cert.k0 == pytest.approx(2.0)


def test_univalence_radius_monotone():
    vals = [univalence_radius(v).tanh_rho0 for v in (0, 1, 2, 4, 8)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        univalence_radius(-1.0)
