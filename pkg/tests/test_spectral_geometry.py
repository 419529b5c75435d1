import itertools
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sjslab.errors import InvalidParameterError, ValidationError
from sjslab.spectral_geometry import (SpatialSpectrum, build_custom_spectrum,
                                      build_sphere_spectrum, build_torus_spectrum, lattice_counts)


def brute_lattice_counts(nmax):
    kmax = math.isqrt(nmax)
    counts = [0] * (nmax + 1)
    for k in itertools.product(range(-kmax, kmax + 1), repeat=3):
        n = sum(x * x for x in k)
        if n <= nmax:
            counts[n] += 1
    return counts


def test_sphere_unit_mass_radius():
    s = build_sphere_spectrum(1.0, 1.0, 2)
    assert s.omegas.tolist() == [1.0, 2.0, 3.0]
    assert s.multiplicities.tolist() == [1, 4, 9]


def test_sphere_single_level():
    s = build_sphere_spectrum(1.0, 1.0, 0)
    assert s.levels == [(0, 1.0, 1)]


def test_sphere_r2_m_half():
    s = build_sphere_spectrum(2.0, 0.5, 1)
    # sqrt(3/4 + 1/4)
    assert s.omegas[1] == pytest.approx(math.sqrt(3 / 4 + 1 / 4), rel=1e-15)
    assert s.multiplicities[1] == 4


@given(R=st.floats(0.1, 10), m=st.floats(0.05, 10))
@settings(max_examples=50, deadline=None)
def test_sphere_formula(R, m):
    s = build_sphere_spectrum(R, m, 60)
    j = np.arange(61.0)
    np.testing.assert_allclose(s.omegas ** 2 - m * m, j * (j + 2) / R ** 2,
                               rtol=1e-12, atol=1e-12 * m * m)
    assert s.multiplicities.sum() == sum((k + 1) ** 2 for k in range(61))


@pytest.mark.parametrize("R", [0.5, 1.0, 2.0, 3.7])
def test_sphere_mr_one_is_exact(R):
    s = build_sphere_spectrum(R, 1.0 / R, 300)
    np.testing.assert_allclose(s.omegas, (np.arange(301) + 1) / R, rtol=2e-16, atol=0)


def test_sphere_invalid():
    with pytest.raises(InvalidParameterError):
        build_sphere_spectrum(0.0, 1.0, 3)
    with pytest.raises(InvalidParameterError):
        build_sphere_spectrum(1.0, -1.0, 3)
    with pytest.raises(InvalidParameterError):
        build_sphere_spectrum(1.0, 1.0, -1)


def test_lattice_counts_against_enumeration():
    assert lattice_counts(50).tolist() == brute_lattice_counts(50)


def test_torus_levels():
    s = build_torus_spectrum(2 * math.pi, 1.0, 8)
    lv = {n: (w, d) for n, w, d in s.levels}
    assert lv[0] == (1.0, 1)
    assert lv[1][1] == 6
    assert lv[1][0] == pytest.approx(math.sqrt(2.0), rel=1e-15)
    assert 7 not in lv
    assert sorted(lv) == [0, 1, 2, 3, 4, 5, 6, 8]


def test_torus_invalid():
    with pytest.raises(InvalidParameterError):
        build_torus_spectrum(-1.0, 1.0, 3)


def test_custom_sort_and_merge():
    s = build_custom_spectrum([(2.0, 1), (1.0, 3)], 1.0)
    assert [(w, d) for _, w, d in s.levels] == [(1.0, 3), (2.0, 1)]
    s = build_custom_spectrum([(1.0, 2), (1.0, 3)], 1.0)
    assert [(w, d) for _, w, d in s.levels] == [(1.0, 5)]


@pytest.mark.parametrize("entries", [[(0.5, 1)], [(-1.0, 1)], [(2.0, 0)], []])
def test_custom_rejects(entries):
    with pytest.raises(ValidationError):
        build_custom_spectrum(entries, 1.0)


def test_json_round_trip():
    s = build_torus_spectrum(1.0, 0.7, 12)
    doc = json.loads(s.to_json())
    assert doc["geometry"] == "torus" and doc["mass"] == 0.7
    assert set(doc["levels"][0]) == {"index", "omega", "multiplicity"}
    back = SpatialSpectrum.from_json(s.to_json())
    assert back.levels == s.levels and back.params == s.params


def test_spectrum_is_immutable():
    s = build_sphere_spectrum(1.0, 1.0, 3)
    with pytest.raises(ValueError):
        s.omegas[0] = 5.0
