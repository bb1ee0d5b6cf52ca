import math

import numpy as np
import pytest

from mobipd.errors import SingularGLS
from mobipd.linreg import DesignMatrix, fit_ols
from mobipd.mixed import RandomSpec, fit_lmm, lmm_inference, predict_random_offset, reml_objective
from oracles import _random_columns, oracle_gls, oracle_reml_criterion


def clustered(seed, K=5, m=30, tau0=1.0, tau1=0.0):
    rng = np.random.default_rng(seed)
    g = np.repeat(np.arange(K), m)
    t = rng.integers(0, 2, g.size).astype(float)
    b0 = rng.normal(0, math.sqrt(tau0), K)
    b1 = rng.normal(0, math.sqrt(tau1), K)
    y = 1.0 + 0.5 * t + b0[g] + b1[g] * t + rng.normal(size=g.size)
    X = np.column_stack([np.ones(g.size), t])
    return DesignMatrix(X, ("(Intercept)", "trt")), y, g, t


def test_single_trial_gives_zero_variance_and_ols():
    X, y, g, t = clustered(0, K=1, m=60)
    fit = fit_lmm(X, y, RandomSpec(), g, t)
    ols = fit_ols(X, y)
    assert fit.tau0_sq == 0.0
    assert np.allclose(fit.fixed_coefficients, ols.coefficients, atol=1e-10)
    assert np.all(fit.blups == 0.0)


@pytest.mark.parametrize("spec", [RandomSpec(True, False), RandomSpec(False, True), RandomSpec(True, True)])
def test_gls_and_blups_match_dense_oracle_at_fitted_ratios(spec):
    X, y, g, t = clustered(1, tau0=1.5, tau1=0.8)
    fit = fit_lmm(X, y, spec, g, t)
    Zc = _random_columns(t, spec.random_intercept, spec.random_slope_on_treatment)
    ref = oracle_gls(X.values, y, g, Zc, fit.theta)
    assert np.allclose(fit.fixed_coefficients, ref["beta"], rtol=1e-8, atol=1e-10)
    assert np.allclose(fit.fixed_covariance, ref["cov"], rtol=1e-7, atol=1e-12)
    assert math.isclose(fit.sigma_sq, ref["sigma2"], rel_tol=1e-8)
    assert np.allclose(fit.blups, ref["blups"], rtol=1e-7, atol=1e-10)


def test_objective_differences_match_dense_criterion():
    X, y, g, t = clustered(2, tau0=1.0, tau1=0.5)
    spec = RandomSpec(True, True)
    Zc = _random_columns(t, True, True)
    pts = [(0.0, 0.0), (0.5, 0.1), (2.0, 1.0), (0.0, 3.0)]
    main = [reml_objective(X.values, y, spec, g, t, 5, th) for th in pts]
    ref = [oracle_reml_criterion(X.values, y, g, Zc, th) for th in pts]
    for i in range(1, len(pts)):
        assert math.isclose(2 * (main[i] - main[0]), ref[i] - ref[0], rel_tol=1e-8, abs_tol=1e-8)


def test_fitted_ratios_are_local_minimum():
    X, y, g, t = clustered(3, tau0=1.0)
    fit = fit_lmm(X, y, RandomSpec(), g, t)
    f0 = reml_objective(X.values, y, RandomSpec(), g, t, 5, fit.theta)
    for d in (0.9, 1.1):
        assert reml_objective(X.values, y, RandomSpec(), g, t, 5, [fit.theta[0] * d]) >= f0 - 1e-9


def test_boundary_fit_has_exactly_zero_blups():
    rng = np.random.default_rng(4)
    g = np.repeat(np.arange(4), 25)
    t = np.tile([0.0, 1.0], 50)
    y = 2.0 + t + rng.normal(size=100)
    # centre each trial so the between-trial spread is exactly zero
    for k in range(4):
        y[g == k] -= y[g == k].mean() - 2.5
    X = DesignMatrix(np.column_stack([np.ones(100), t]))
    fit = fit_lmm(X, y, RandomSpec(), g, t)
    assert fit.theta == (0.0,)
    assert np.all(fit.blups == 0.0)


def test_random_offset_reconstructs_blups():
    X, y, g, t = clustered(5, tau0=1.0, tau1=1.0)
    fit = fit_lmm(X, y, RandomSpec(True, True), g, t)
    off = predict_random_offset(fit, g, t)
    expect = fit.blup("intercept")[g] + fit.blup("treatment")[g] * t
    assert np.allclose(off, expect)
    with pytest.raises(IndexError):
        predict_random_offset(fit, np.array([7]), np.array([1.0]))


def test_rank_deficient_fixed_design():
    X, y, g, t = clustered(6)
    bad = DesignMatrix(np.column_stack([X.values, X.values[:, 1]]))
    with pytest.raises(SingularGLS):
        fit_lmm(bad, y, RandomSpec(), g, t)


def test_slope_spec_requires_treatment():
    X, y, g, t = clustered(7)
    with pytest.raises(ValueError):
        fit_lmm(X, y, RandomSpec(False, True), g)


def test_inference_uses_normal_reference():
    X, y, g, t = clustered(8)
    fit = fit_lmm(X, y, RandomSpec(), g, t)
    inf = lmm_inference(fit, "trt")
    half = inf.ci95_high - inf.estimate
    assert math.isclose(half, 1.959963984540054 * inf.std_error, rel_tol=1e-9)


def test_spec_needs_a_component():
    with pytest.raises(ValueError):
        RandomSpec(False, False)
