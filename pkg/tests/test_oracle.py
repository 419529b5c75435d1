import math

import numpy as np
import pytest

from sjslab.errors import DomainError, InvalidParameterError
from sjslab.oracle import (aj_oracle_report, discretized_aj, dominated_convergence_bound,
                           limit_tau_check, positive_part, run_validation_suite,
                           saturation_defect, saturation_purity_check)
from sjslab.slab_modes import ah_kernel, mode_constants
from sjslab.smearing import bump


def test_discretized_is_hermitian():
    op = discretized_aj(1.7, 0.9, 64)
    assert np.abs(op.matrix - op.matrix.conj().T).max() <= 1e-13
    with pytest.raises(InvalidParameterError):
        discretized_aj(1.0, 1.0, 8)


def test_quarter_period_case():
    rep = aj_oracle_report(math.pi / 2, 1.0, 1001)
    assert rep["eig_plus"] == pytest.approx(2 / math.pi, abs=1e-8)
    assert rep["rank_ratio"] <= 1e-8
    assert rep["overlap_plus"] >= 1 - 1e-8
    # delta = 0: the positive part is the ground-state kernel itself
    assert rep["positive_part_deviation"] <= 1e-7


def test_delta_zero_positive_part_is_hadamard():
    op = discretized_aj(math.pi / 2, 1.0, 200)
    m_plus, proj = positive_part(op)
    sw = op.sqrt_weights
    t = op.nodes
    k = m_plus / (sw[:, None] * sw[None, :])
    assert np.abs(k - ah_kernel(math.pi / 2, t[:, None], t[None, :])).max() <= 1e-7
    np.testing.assert_allclose(proj @ proj, proj, atol=1e-12)
    assert np.linalg.eigvalsh(m_plus).min() >= -1e-10


def test_convergence_under_refinement():
    # large omega tau so that small grids are under-resolved
    coarse = aj_oracle_report(20.0, 1.0, 16)
    fine = aj_oracle_report(20.0, 1.0, 32)
    finer = aj_oracle_report(20.0, 1.0, 64)
    for key in ("rel_err_plus", "positive_part_deviation"):
        assert fine[key] <= coarse[key] / 10 or fine[key] <= 1e-12
        assert finer[key] <= fine[key] / 10 or finer[key] <= 1e-12
    assert finer["positive_part_deviation"] <= 1e-7


def test_random_pairs_agree():
    rng = np.random.default_rng(11)
    for _ in range(20):
        wt = rng.uniform(0.5, 50)
        tau = rng.uniform(0.3, 3.0)
        omega = wt / tau
        n = 48 + int(4 * wt)
        rep = aj_oracle_report(omega, tau, n)
        assert rep["rel_err_plus"] <= 1e-10 and rep["rel_err_minus"] <= 1e-10
        assert rep["positive_part_deviation"] <= 1e-9 * max(1.0, 1 / omega)


def test_saturation_basis_vectors():
    mc = mode_constants(1.0, 1.0)
    assert saturation_defect(mc, (1.0, 0.0)) <= 1e-10
    assert saturation_defect(mc, (0.0, 1.0)) <= 1e-10
    f = (0.3, -1.2)
    assert saturation_defect(mc, (0.6, -2.4)) == pytest.approx(saturation_defect(mc, f), abs=1e-13)


def test_saturation_random_modes():
    rng = np.random.default_rng(5)
    for w, t in zip(rng.uniform(0.1, 20, 10), rng.uniform(0.1, 10, 10)):
        assert saturation_purity_check(mode_constants(w, t), trials=10) <= 1e-10


def test_limit_tau():
    rep = limit_tau_check(1.0, bump(1.0), [2, 5, 10, 20, 50, 100])
    mag = np.abs(rep.kernel_values)
    assert np.all(np.diff(mag) < 0)
    assert mag[-1] <= 0.05 * mag[0]
    assert rep.matching_convention == "both"


def test_limit_sign_convention():
    f = bump(0.5, center=0.3)
    h = bump(0.4, center=-0.2)
    rep = limit_tau_check(1.3, f, [2.0, 4.0, 8.0], h=h)
    assert rep.matching_convention == "minus"
    assert np.abs(rep.transform_plus - rep.kernel_values).max() > 1e-6


def test_limit_support():
    with pytest.raises(DomainError):
        limit_tau_check(1.0, bump(1.0), [0.5, 2.0])


def test_dominated_convergence():
    res = dominated_convergence_bound(bump(1.0), 1.0, np.linspace(0, 80, 161),
                                      np.linspace(0, 300, 601))
    assert res["holds"] and res["power"] == 2


def test_validation_suite_records():
    recs = run_validation_suite(N=96)
    assert recs and all(set(r) == {"case", "N", "deviation", "pass"} for r in recs)
    assert all(r["pass"] for r in recs)
