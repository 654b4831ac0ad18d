import json
import math

import numpy as np
import pytest

from harmap.fixtures import corpus, export_fixture, fixture_names, get_fixture, shear_norm
from harmap.hmap import invariants_at, map_from_document


def test_names_unique_and_present():
    names = fixture_names()
    assert len(names) == len(set(names))
    for n in ("identity", "H_1", "shear_k0.5", "koebe", "harmonic_koebe"):
        assert n in names


def test_known_values():
    assert get_fixture("identity").value("norm") == 0
    assert get_fixture("H_1").value("norm") == 2
    assert get_fixture("shear_k0.5").value("norm") == pytest.approx(4 - 2 * math.sqrt(3))
    assert get_fixture("H_1").value("covering_radius") == pytest.approx(2 * math.log(2) - 1)


def test_provenance_tags():
    for fx in corpus():
        for k in fx.known.values():
            assert k.provenance.split(":")[0] in ("PUBLISHED", "DERIVED", "TRIVIAL")


def test_shear_norm_is_maximum():
    r = np.linspace(0, 1, 200001)[:-1]
    for k in (0.25, 0.5, 0.9):
        assert shear_norm(k) == pytest.approx(np.max(k * (1 - r * r) / (1 - k * r)), rel=1e-9)


def test_harmonic_koebe_coefficients():
    f = get_fixture("harmonic_koebe").map
    n = np.arange(1, 40)
    np.testing.assert_allclose(f.h.coeffs[1:40].real, (n + 1) * (2 * n + 1) / 6, rtol=1e-12)
    np.testing.assert_allclose(f.g.coeffs[1:40].real, (n - 1) * (2 * n - 1) / 6, rtol=1e-12)


def test_closed_forms_agree_with_series():
    z = np.array([0.2 + 0.1j, -0.35j, 0.4])
    for fx in corpus():
        f = fx.map
        if f.closed is None:
            continue
        bare = type(f)(f.h, f.g)
        np.testing.assert_allclose(f.values(z), bare.values(z), rtol=1e-10, atol=1e-12, err_msg=fx.name)
        jc, js = f.jet(z), bare.jet(z)
        for a, b in zip(jc, js):
            np.testing.assert_allclose(a, b, rtol=1e-9, atol=1e-10, err_msg=fx.name)


def test_jacobian_positive_where_claimed():
    pts = [0.0, 0.5, -0.9j, 0.7 + 0.2j]
    for fx in corpus():
        if fx.univalent:
            for z in pts:
                assert invariants_at(fx.map, z).jacobian > 0, fx.name


def test_export_roundtrip():
    doc = json.loads(export_fixture("shear_k0.5"))
    assert doc["polynomial"] is True
    f = map_from_document(doc)
    assert f.g.coeffs[2] == 0.25


def test_unknown_fixture():
    with pytest.raises(KeyError):
        get_fixture("nope")
