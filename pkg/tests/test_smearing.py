import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sjslab.errors import AccuracyError, DomainError, InvalidParameterError, NearZeroOverlapError
from sjslab.slab_modes import mode_constants
from sjslab.smearing import (bump, cosine_transform, default_width, from_config, integrate,
                             l2_norm, mode_test_function, normalize_eta_hadamard,
                             normalize_eta_sj, sine_transform)
import sjslab.smearing as smearing

# extended-precision references (mpmath.quad, 30 digits)
BUMP_INTEGRAL = 0.443993816168079437823048921171
BUMP_COS_W1 = 0.409859132390344353531091182924
BUMP_COS_W2 = 0.318394879869510848067803702173
BUMP08_COS_W1 = 0.337541684895485649372514171554


def mp_transform(f, omega, kind="cos"):
    mpmath.mp.dps = 30
    trig = mpmath.cos if kind == "cos" else mpmath.sin
    lo, hi = f.support

    def g(t):
        u = (t - f.center) / f.a
        if abs(u) >= 1:
            return 0
        return f.amplitude * mpmath.exp(-1 / (1 - u * u)) * trig(omega * t)

    return float(mpmath.quad(g, [lo, f.center, hi]))


def test_bump_values():
    f = bump(1.0, 1.0)
    assert f(0.0) == pytest.approx(math.exp(-1), rel=1e-15)
    assert f(1.0) == 0.0 and f(-1.0) == 0.0
    assert f.symmetric
    assert integrate(f) == pytest.approx(BUMP_INTEGRAL, rel=1e-12)


def test_bump_rejects():
    with pytest.raises(InvalidParameterError):
        bump(0.0)
    with pytest.raises(InvalidParameterError):
        bump(-1.0)


def test_config_round_trip():
    f = bump(0.4, 2.5, center=0.1)
    assert from_config(f.to_config()) == f
    assert from_config({"family": "bump", "a": 0.3, "amplitude": 2.0}) == bump(0.3, 2.0)
    with pytest.raises(InvalidParameterError):
        from_config({"family": "gauss", "a": 1.0})


def test_cosine_transform_references():
    f = bump(1.0)
    assert cosine_transform(f, 0.0) == pytest.approx(integrate(f), rel=1e-13)
    assert cosine_transform(f, 2.0) == pytest.approx(BUMP_COS_W2, rel=1e-10)
    assert cosine_transform(f, 1.0) == pytest.approx(BUMP_COS_W1, rel=1e-10)
    assert cosine_transform(bump(0.8), 1.0) == pytest.approx(BUMP08_COS_W1, rel=1e-10)


@pytest.mark.parametrize("a,center,omega", [(0.3, 0.2, 3.0), (0.5, -0.4, 11.0), (0.25, 0.6, 0.7)])
def test_shifted_transforms_against_mpmath(a, center, omega):
    f = bump(a, 1.7, center)
    assert not f.symmetric
    assert cosine_transform(f, omega) == pytest.approx(mp_transform(f, omega, "cos"), rel=1e-10)
    assert sine_transform(f, omega) == pytest.approx(mp_transform(f, omega, "sin"), rel=1e-10)


@given(omega=st.floats(0.0, 500.0), a=st.floats(0.05, 3.0))
@settings(max_examples=40, deadline=None)
def test_parity(omega, a):
    assert sine_transform(bump(a), omega) == 0.0


@given(alpha=st.floats(-10, 10).filter(lambda x: abs(x) > 1e-6), omega=st.floats(0.0, 30.0))
@settings(max_examples=40, deadline=None)
def test_linearity(alpha, omega):
    f = bump(0.7, 1.0, 0.1)
    assert cosine_transform(f.scaled(alpha), omega) == pytest.approx(
        alpha * cosine_transform(f, omega), rel=1e-15, abs=1e-300)
    assert sine_transform(f.scaled(alpha), omega) == pytest.approx(
        alpha * sine_transform(f, omega), rel=1e-15, abs=1e-300)


@pytest.mark.parametrize("omega", [1.0, 10.0, 100.0])
def test_restricted_cosine_product(omega):
    # f = shape * cos(omega' t); with a different mode this reduces to sums of transforms
    f = bump(1.0)
    w2 = 0.37
    direct = smearing._adaptive(f, lambda t: np.cos(omega * t) * np.cos(w2 * t), 1.0)
    via = 0.5 * (cosine_transform(f, omega + w2) + cosine_transform(f, omega - w2))
    assert direct == pytest.approx(via, rel=1e-10, abs=1e-16)


def test_l2_norm():
    mpmath.mp.dps = 30
    ref = mpmath.sqrt(mpmath.quad(lambda t: mpmath.exp(-2 / (1 - t * t)), [-1, 0, 1]))
    assert l2_norm(bump(1.0, -3.0)) == pytest.approx(3 * float(ref), rel=1e-12)


def test_accuracy_error(monkeypatch):
    monkeypatch.setattr(smearing, "N_MAX", 32)
    with pytest.raises(AccuracyError) as info:
        cosine_transform(bump(1.0), 400.0)
    assert len(info.value.estimates) == 2


def test_normalize_hadamard():
    f = normalize_eta_hadamard(bump(1.0), 1.0)
    assert f.amplitude == pytest.approx(math.sqrt(2.0) / BUMP_COS_W1, rel=1e-10)
    c = cosine_transform(f, 1.0)
    assert c ** 2 / 2.0 == pytest.approx(1.0, rel=1e-12)
    twice = normalize_eta_hadamard(f, 1.0)
    assert twice.amplitude == pytest.approx(f.amplitude, rel=1e-12)


def test_normalize_sj():
    mc = mode_constants(1.0, 1.0)
    f = normalize_eta_sj(bump(0.8), mc)
    target = math.sqrt(2 * mc.omega * mc.normC / mc.normS)
    assert f.amplitude == pytest.approx(target / BUMP08_COS_W1, rel=1e-10)
    assert mc.normS / (2 * mc.omega * mc.normC) * cosine_transform(f, 1.0) ** 2 == pytest.approx(1.0, rel=1e-12)


def test_normalize_sj_delta_zero_matches_hadamard():
    mc = mode_constants(math.pi / 2, 1.0)
    f = bump(0.6)
    assert normalize_eta_sj(f, mc).amplitude == normalize_eta_hadamard(f, mc.omega).amplitude


def test_near_zero_overlap():
    # int bump(a) cos(omega t) changes sign as omega grows; find a root and sit on it
    from scipy.optimize import brentq
    f = bump(1.0)
    root = brentq(lambda w: cosine_transform(f, w), 3.0, 8.0, xtol=1e-14)
    with pytest.raises(NearZeroOverlapError):
        normalize_eta_hadamard(f, root)


def test_mode_test_function_width():
    assert default_width(1.0, 1.0) == pytest.approx(0.8)
    assert default_width(10.0, 1.0) == pytest.approx(math.pi / 20)
    e = mode_test_function(3.0, 2.0)
    assert e.a == pytest.approx(math.pi / 6) and e.symmetric
    assert cosine_transform(e, 3.0) == pytest.approx(math.sqrt(6.0), rel=1e-12)
    with pytest.raises(InvalidParameterError):
        mode_test_function(3.0, 2.0, normalization="sj")


def test_support_check():
    bump(1.0).check_support(1.0)
    with pytest.raises(DomainError):
        bump(0.5, center=0.6).check_support(1.0)
