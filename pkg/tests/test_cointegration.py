import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from econokit import EconokitError, QuarterIndex, egadf_test
from econokit.cointegration import EG_CRITICAL
from econokit.experiments import eg_rejection_rate
from econokit.series import Series, series_from_values
from econokit.simulate import PairSpec, gen_cointegrated_pair


def test_default_critical_values():
    assert EG_CRITICAL == {0.10: -3.12, 0.05: -3.41, 0.01: -3.96}


def test_theta_recovered_and_detected():
    y, x = gen_cointegrated_pair(PairSpec(T=400, seed=60))
    res = egadf_test(y, x)
    assert abs(res.theta - 3.0) < 0.05
    assert res.cointegrated[0.05]
    assert res.normalization == "y = alpha + theta * x + z"


def test_residuals_reconstruct_stage1():
    y, x = gen_cointegrated_pair(PairSpec(T=200, seed=61, phi_u=0.6, sigma_u=0.5))
    res = egadf_test(y, x, lags=2)
    z = y.values - res.alpha - res.theta * x.values
    assert np.allclose(res.residuals.values, z, rtol=0, atol=1e-9 * np.abs(y.values).max())
    assert np.array_equal(res.residuals.values, res.stage1.residuals)
    assert abs(res.residuals.values.sum()) < 1e-8 * np.abs(y.values).sum()
    assert "const" not in res.stage2.names
    assert res.stage2.names == ("z_t-1", "D_z_t-1", "D_z_t-2")


def test_decision_rule_and_override():
    y, x = gen_cointegrated_pair(PairSpec(T=200, seed=62, phi_u=0.9, sigma_u=1.0))
    res = egadf_test(y, x)
    for L, flag in res.cointegrated.items():
        assert flag == (res.adf_stat < res.critical_values[L])
    loose = {0.10: 0.0, 0.05: -0.5, 0.01: -1.0}
    assert all(egadf_test(y, x, critical_values=loose).cointegrated.values()) == (res.adf_stat < -1.0)
    with pytest.raises(EconokitError):
        egadf_test(y, x, critical_values={0.05: -3.0})


def test_paper_statistic_not_cointegrated_at_one_percent():
    assert not (-2.77065 < EG_CRITICAL[0.01])


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.floats(0.01, 100.0))
def test_theta_equivariance(seed, c):
    y, x = gen_cointegrated_pair(PairSpec(T=150, seed=seed, phi_u=0.5))
    a = egadf_test(y, x)
    b = egadf_test(y, Series(x.name, x.start, c * x.values))
    assert b.theta == pytest.approx(a.theta / c, rel=1e-8)
    assert b.adf_stat == pytest.approx(a.adf_stat, rel=1e-8)


def test_swapping_changes_normalization():
    y, x = gen_cointegrated_pair(PairSpec(T=200, seed=63, sigma_u=1.0))
    a, b = egadf_test(y, x), egadf_test(x, y)
    assert a.theta != pytest.approx(1 / b.theta, rel=1e-6)
    assert a.normalization != b.normalization


def test_sample_window_and_errors():
    y, x = gen_cointegrated_pair(PairSpec(T=100, seed=64))
    res = egadf_test(y, x, sample=(QuarterIndex(1995, 1), QuarterIndex(2010, 4)))
    assert res.residuals.start == QuarterIndex(1995, 1) and len(res.residuals) == 64
    with pytest.raises(EconokitError, match="outside"):
        egadf_test(y, x, sample=(QuarterIndex(1985, 1), QuarterIndex(2010, 4)))
    with pytest.raises(EconokitError, match="zero variance"):
        egadf_test(y, series_from_values([1.0] * 100, name="x"))
    with pytest.raises(EconokitError, match="too short"):
        egadf_test(y.window(None, "1992Q2"), x, lags=1)


@pytest.mark.slow
def test_power_and_size_at_t400():
    assert eg_rejection_rate(True, runs=300, T=400, seed=65) >= 0.80
    assert 0.02 <= eg_rejection_rate(False, runs=1000, T=400, seed=66) <= 0.09
