import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from mobipd.errors import DegenerateVariance, RankDeficient, Underdetermined
from mobipd.linreg import DesignMatrix, fit_ols, gaussian_nll, wald_inference
from oracles import oracle_nll, oracle_normal_equations


def random_problem(seed, n=40, p=3):
    rng = np.random.default_rng(seed)
    X = np.column_stack([np.ones(n), rng.normal(size=(n, p - 1))])
    y = X @ rng.normal(size=p) + rng.normal(size=n)
    return X, y


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(5, 60), st.integers(1, 4))
def test_matches_normal_equations(seed, n, p):
    X, y = random_problem(seed, n=n + p, p=p)
    fit = fit_ols(DesignMatrix(X), y)
    beta = oracle_normal_equations(X, y)
    assert np.allclose(fit.coefficients, beta, rtol=1e-8, atol=1e-8)
    assert math.isclose(fit.objective, oracle_nll(X, y), rel_tol=1e-9, abs_tol=1e-9)


def test_scores_sum_to_zero_per_column():
    X, y = random_problem(1)
    fit = fit_ols(DesignMatrix(X), y)
    assert np.allclose(fit.scores.sum(axis=0), 0.0, atol=1e-10)


def test_rank_deficiency_names_the_column():
    X, y = random_problem(2)
    X = np.column_stack([X, 2.0 * X[:, 1]])
    with pytest.raises(RankDeficient) as info:
        fit_ols(DesignMatrix(X, ("a", "b", "c", "twice_b")), y)
    assert "twice_b" in info.value.columns


def test_zero_column_is_rank_deficient():
    X, y = random_problem(3)
    X[:, 2] = 0.0
    with pytest.raises(RankDeficient):
        fit_ols(DesignMatrix(X), y)


def test_fewer_rows_than_columns():
    X, y = random_problem(4, n=2, p=3)
    with pytest.raises(Underdetermined):
        fit_ols(DesignMatrix(X), y)


def test_offset_is_subtracted():
    X, y = random_problem(5)
    off = np.linspace(-1, 1, y.size)
    a = fit_ols(DesignMatrix(X), y, offset=off)
    b = fit_ols(DesignMatrix(X), y - off)
    assert np.allclose(a.coefficients, b.coefficients)


def test_wald_matches_t_test_of_two_means():
    rng = np.random.default_rng(6)
    t = np.repeat([0.0, 1.0], 25)
    y = 1.0 + 0.8 * t + rng.normal(size=50)
    fit = fit_ols(DesignMatrix(np.column_stack([np.ones(50), t]), ("(Intercept)", "trt")), y)
    inf = wald_inference(fit, "trt")
    ref = stats.ttest_ind(y[t == 1], y[t == 0])
    assert math.isclose(inf.estimate, y[t == 1].mean() - y[t == 0].mean(), rel_tol=1e-10)
    assert math.isclose(inf.p_value, ref.pvalue, rel_tol=1e-8)
    assert inf.ci95_low < inf.estimate < inf.ci95_high


def test_wald_needs_residual_df():
    X = np.column_stack([np.ones(2), [0.0, 1.0]])
    fit = fit_ols(DesignMatrix(X), np.array([1.0, 2.0]))
    with pytest.raises(DegenerateVariance):
        wald_inference(fit, 1)


def test_perfect_fit_objective_is_floored():
    assert math.isfinite(gaussian_nll(0.0, 10))
    assert gaussian_nll(0.0, 0) == 0.0


def test_default_labels():
    assert DesignMatrix(np.ones((3, 2))).column_labels == ("x0", "x1")
