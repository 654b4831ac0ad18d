import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmap import series as cs
from harmap.errors import RadiusError, SeriesDivisionError
from harmap.series import ComplexSeries

_coef = st.complex_numbers(max_magnitude=10.0, allow_nan=False, allow_infinity=False)
_series = st.lists(_coef, min_size=1, max_size=12).map(lambda c: ComplexSeries(np.array(c), polynomial=True))
_point = st.tuples(st.floats(0, 0.95), st.floats(0, 2 * np.pi)).map(lambda t: t[0] * np.exp(1j * t[1]))


def test_constructor_rejects_empty_and_nonfinite():
    with pytest.raises(ValueError):
        ComplexSeries(np.array([]))
    with pytest.raises(ValueError):
        ComplexSeries(np.array([1.0, np.nan]))


def test_coefficients_are_read_only():
    s = ComplexSeries([1, 2, 3])
    with pytest.raises(ValueError):
        s.coeffs[0] = 5


def test_evaluate_scalar_and_array():
    s = ComplexSeries([1, 2, 3])
    assert s(0.5) == pytest.approx(1 + 1 + 0.75)
    out = cs.evaluate(s, np.array([0.0, 0.5j]))
    assert out.shape == (2,)
    assert out[1] == pytest.approx(1 + 1j - 0.75)


def test_evaluate_rejects_boundary():
    with pytest.raises(RadiusError):
        cs.evaluate(ComplexSeries([1, 1]), 1.0)


@settings(max_examples=60, deadline=None)
@given(_series, _point)
def test_horner_matches_numpy_polyval(s, z):
    p, d1, d2 = cs.evaluate_derivs(s, np.array([z]))
    c = s.coeffs
    P = np.polynomial.polynomial
    assert p[0] == pytest.approx(P.polyval(z, c), rel=1e-10, abs=1e-10)
    assert d1[0] == pytest.approx(P.polyval(z, P.polyder(c)), rel=1e-10, abs=1e-9)
    assert d2[0] == pytest.approx(P.polyval(z, P.polyder(c, 2)), rel=1e-10, abs=1e-8)


def test_derivative_and_antiderivative_roundtrip():
    s = ComplexSeries([0, 1, 2j, 3])
    assert cs.derivative(cs.antiderivative(s)) == s
    assert cs.derivative(ComplexSeries([4.0])).order == 0


@settings(max_examples=40, deadline=None)
@given(_series, _series)
def test_multiply_matches_convolution(a, b):
    prod = cs.multiply(a, b)
    np.testing.assert_allclose(prod.coeffs, np.convolve(a.coeffs, b.coeffs)[: prod.order + 1], atol=1e-9)


def test_divide_geometric_series():
    q = cs.divide(ComplexSeries([1.0]), ComplexSeries([1.0, -1.0]), 10)
    np.testing.assert_allclose(q.coeffs, np.ones(11))


@settings(max_examples=40, deadline=None)
@given(_series, st.lists(_coef, min_size=1, max_size=6))
def test_divide_then_multiply_recovers_numerator(num, den_tail):
    den = ComplexSeries(np.array([1.0] + den_tail[1:]))
    q = cs.divide(num, den, 12)
    back = cs.multiply(q, den, 12)
    np.testing.assert_allclose(back.coeffs[: num.order + 1], num.coeffs, atol=1e-6 * max(1, np.abs(q.coeffs).max()))


def test_divide_singular():
    with pytest.raises(SeriesDivisionError, match="series division singular"):
        cs.divide(ComplexSeries([1.0]), ComplexSeries([0.0, 1.0]))


def test_trusted_radius():
    assert cs.trusted_radius(ComplexSeries([1, 2, 3], polynomial=True)) == 1.0
    geo = ComplexSeries(np.ones(257))
    r = cs.trusted_radius(geo)
    assert 0.8 < r < 1.0
    assert cs.tail_bound(geo, r) == pytest.approx(cs.TAIL_TOL, rel=1e-3)


def test_pairs_roundtrip():
    s = ComplexSeries([1 + 2j, -3j])
    assert ComplexSeries.from_pairs(s.to_pairs()) == s


def test_padded_keeps_polynomial_flag():
    s = ComplexSeries.monomial(2)
    assert s.padded(5).polynomial
    assert not s.padded(1).polynomial
