import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from mobipd.errors import TooFewDistinct
from mobipd.stability import (
    InstabilityResult,
    categorical_fluctuation_test,
    select_split_variable,
    suplm_pvalue,
    suplm_test,
)
from oracles import oracle_categorical_stat, oracle_suplm_limit_sf, oracle_suplm_scan


def scores_and_z(seed, n=60, k=2, ties=False):
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=(n, k))
    z = rng.integers(0, 8, n).astype(float) if ties else rng.normal(size=n)
    return psi, z


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(12, 80), st.integers(1, 3), st.booleans(), st.sampled_from([0.1, 0.15, 0.2]))
def test_statistic_matches_pinv_scan(seed, n, k, ties, trim):
    psi, z = scores_and_z(seed, n, k, ties)
    if np.unique(z).size < 2:
        return
    res = suplm_test(psi, z, trim)
    assert math.isclose(res.statistic, oracle_suplm_scan(psi, z, trim), rel_tol=1e-9, abs_tol=1e-10)


def test_invariant_to_monotone_transform_and_score_scale():
    psi, z = scores_and_z(1, n=80)
    a = suplm_test(psi, z)
    b = suplm_test(psi * np.array([1e-6, 1e6]), np.exp(3 * z))
    assert math.isclose(a.statistic, b.statistic, rel_tol=1e-9)


def test_collinear_score_column_is_absorbed():
    psi, z = scores_and_z(2, n=50, k=2)
    dup = np.column_stack([psi, psi[:, 0] * 3.0])
    a, b = suplm_test(psi, z), suplm_test(dup, z)
    assert b.df == 2
    assert math.isclose(a.statistic, b.statistic, rel_tol=1e-9)


def test_pvalue_decreases_in_statistic():
    grid = np.linspace(0.5, 40, 60)
    for k in (1, 2, 4):
        p = [suplm_pvalue(s, k, 0.1) for s in grid]
        assert all(x >= y for x, y in zip(p, p[1:]))
        assert 0.0 <= p[-1] <= p[0] <= 1.0


def test_half_trim_limit_is_chi_square():
    assert math.isclose(suplm_pvalue(5.0, 2, 0.4999999), stats.chi2.sf(5.0, 2), rel_tol=1e-3)


def test_pvalues_match_monte_carlo_limit():
    k, trim = 2, 0.1
    # the gamma approximation targets the decision region, p in [0.01, 0.2]
    stat = np.array([9.0, 11.0, 14.0])
    mc = oracle_suplm_limit_sf(stat, k, trim, reps=8000, grid=500, seed=3)
    main = np.array([suplm_pvalue(s, k, trim) for s in stat])
    assert np.all(np.abs(main - mc) < 0.2 * mc + 0.005), (main, mc)


def test_categorical_matches_oracle():
    rng = np.random.default_rng(4)
    psi = rng.normal(size=(90, 2))
    codes = rng.integers(-1, 4, 90)
    res = categorical_fluctuation_test(psi, codes)
    assert math.isclose(res.statistic, oracle_categorical_stat(psi, codes), rel_tol=1e-9)
    assert res.df == 3 * 2
    assert res.n_used == int((codes >= 0).sum())


def test_too_few_distinct_values():
    psi, _ = scores_and_z(5, n=20)
    with pytest.raises(TooFewDistinct):
        suplm_test(psi, np.ones(20))
    with pytest.raises(TooFewDistinct):
        categorical_fluctuation_test(psi, np.zeros(20, int))


def test_bad_trim_rejected():
    psi, z = scores_and_z(6)
    with pytest.raises(ValueError):
        suplm_test(psi, z, trim=0.6)


def res(name, p):
    return InstabilityResult(name, 1.0, p, "supLM", 100)


def test_bonferroni_selection_and_ties():
    choice = select_split_variable([res("a", 0.01), res("b", 0.01), res("c", 0.2)], 0.05)
    assert choice.variable == "a"
    assert math.isclose(choice.adjusted_p, 0.03)
    assert select_split_variable([res("a", 0.03), res("b", 0.3)], 0.05) is None
    assert select_split_variable([], 0.05) is None
