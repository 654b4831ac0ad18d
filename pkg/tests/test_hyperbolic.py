import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmap.errors import RadiusError
from harmap.hyperbolic import (
    MoebiusPullback,
    hyperbolic_distance,
    in_hyperbolic_disk,
    pseudo_hyperbolic,
    pullback_apply,
    pullback_second_derivative,
)

_disk = st.tuples(st.floats(0, 0.95), st.floats(0, 2 * np.pi)).map(lambda t: complex(t[0] * np.exp(1j * t[1])))


def test_known_distances():
    assert hyperbolic_distance(0, 0.5) == pytest.approx(0.5 * math.log(3))
    assert pseudo_hyperbolic(0.5, 0.5) == 0


def test_boundary_of_hyperbolic_disk_is_excluded():
    assert not in_hyperbolic_disk(0.5, 0.0, 0.5 * math.log(3))
    assert in_hyperbolic_disk(0.49, 0.0, 0.5 * math.log(3))
    with pytest.raises(ValueError):
        in_hyperbolic_disk(0.1, 0.0, 0.0)


def test_outside_disk_rejected():
    with pytest.raises(RadiusError):
        hyperbolic_distance(1.0, 0.0)


@settings(max_examples=60, deadline=None)
@given(_disk, _disk, _disk)
def test_triangle_inequality_and_symmetry(a, b, c):
    dab, dbc, dac = hyperbolic_distance(a, b), hyperbolic_distance(b, c), hyperbolic_distance(a, c)
    assert dab == pytest.approx(hyperbolic_distance(b, a), abs=1e-9)
    assert dac <= dab + dbc + 1e-9


@settings(max_examples=60, deadline=None)
@given(_disk, _disk, _disk)
def test_automorphism_invariance(a, z, w):
    T = MoebiusPullback(a, 0.999999999)
    tz, _, _ = pullback_apply(T, z)
    tw, _, _ = pullback_apply(T, w)
    # R ~ 1 makes T an automorphism up to 1e-9
    assert hyperbolic_distance(tz, tw) == pytest.approx(hyperbolic_distance(z, w), abs=1e-6)


@settings(max_examples=40, deadline=None)
@given(_disk, st.floats(0.05, 0.95), _disk)
def test_pullback_derivatives_by_finite_differences(a, R, xi):
    T = MoebiusPullback(a, R)
    xi = 0.9 * xi
    w, d1, ratio = pullback_apply(T, xi)
    h = 1e-6
    wp, _, _ = pullback_apply(T, xi + h)
    wm, _, _ = pullback_apply(T, xi - h)
    assert d1 == pytest.approx((wp - wm) / (2 * h), rel=1e-6, abs=1e-8)
    assert pullback_second_derivative(T, xi) == pytest.approx(ratio * d1, rel=1e-12, abs=1e-14)


def test_pullback_validation_and_radius():
    T = MoebiusPullback.from_radius(0.2j, 0.5)
    assert T.rho == pytest.approx(0.5)
    assert pullback_apply(T, 0.0)[0] == pytest.approx(0.2j)
    with pytest.raises(ValueError):
        MoebiusPullback(1.0, 0.5)
    with pytest.raises(ValueError):
        MoebiusPullback(0.0, 1.0)
