"""Ordinary least squares with per-observation score contributions.

This is the node model of the plain trees and the global model of the
fixed-trial-intercept alternation. Rank deficiency is detected and reported
by column name instead of being pivoted away, so that an unestimable
trial intercept inside a node can be acted on by the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats
from scipy.linalg import solve_triangular

from .errors import DegenerateVariance, RankDeficient, Underdetermined

SIGMA2_FLOOR = 1e-12
RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DesignMatrix:
    values: np.ndarray
    column_labels: tuple[str, ...] | None = None
    rank_tolerance: float = RANK_TOL

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2:
            raise ValueError("design matrix must be two-dimensional")
        if self.column_labels is None:
            object.__setattr__(self, "column_labels", tuple(f"x{j}" for j in range(v.shape[1])))
        if v.shape[1] != len(self.column_labels):
            raise ValueError("column_labels length does not match number of columns")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "column_labels", tuple(self.column_labels))

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


@dataclass(frozen=True, eq=False)
class FittedLinearModel:
    """OLS fit.

    ``residual_variance`` is RSS / df_residual (the usual unbiased estimate,
    used for ``covariance``); the objective is the Gaussian negative
    log-likelihood at the maximum-likelihood variance RSS / n, floored at
    ``SIGMA2_FLOOR``. ``scores`` holds raw contributions x_i * r_i.
    """

    coefficients: np.ndarray
    column_labels: tuple[str, ...]
    residuals: np.ndarray
    residual_variance: float
    objective: float
    scores: np.ndarray
    covariance: np.ndarray
    n_obs: int
    df_residual: int
    rss: float

    def coef(self, label: str) -> float:
        return float(self.coefficients[self.column_labels.index(label)])


@dataclass(frozen=True)
class Inference:
    estimate: float
    std_error: float
    ci95_low: float
    ci95_high: float
    p_value: float

    def __post_init__(self):
        for f in ("estimate", "std_error", "ci95_low", "ci95_high", "p_value"):
            object.__setattr__(self, f, float(getattr(self, f)))

    def as_dict(self) -> dict[str, float]:
        return {
            "estimate": self.estimate, "std_error": self.std_error,
            "ci95_low": self.ci95_low, "ci95_high": self.ci95_high, "p_value": self.p_value,
        }


def gaussian_nll(rss: float, n: int) -> float:
    """Negative log-likelihood of n Gaussian residuals at sigma^2 = rss / n."""
    if n == 0:
        return 0.0
    s2 = max(rss / n, SIGMA2_FLOOR)
    return 0.5 * n * (math.log(2.0 * math.pi * s2) + 1.0)


def fit_ols(X: DesignMatrix, y, offset=None) -> FittedLinearModel:
    vals = X.values
    n, p = vals.shape
    y = np.asarray(y, dtype=float)
    if y.shape != (n,):
        raise ValueError("y length does not match design rows")
    if n < 1:
        raise Underdetermined("no observations")
    if n < p:
        raise Underdetermined(f"{n} observations for {p} coefficients")
    yw = y if offset is None else y - np.asarray(offset, dtype=float)

    q, r = np.linalg.qr(vals, mode="reduced")
    norms = np.linalg.norm(vals, axis=0)
    diag = np.abs(np.diag(r))
    bad = [X.column_labels[j] for j in range(p) if norms[j] == 0.0 or diag[j] <= X.rank_tolerance * norms[j]]
    if bad:
        raise RankDeficient(bad)

    qty = q.T @ yw
    beta = _solve_upper(r, qty)
    resid = yw - vals @ beta
    rss = float(resid @ resid)
    df = n - p
    s2 = rss / df if df > 0 else 0.0
    rinv = _solve_upper(r, np.eye(p))
    cov = s2 * (rinv @ rinv.T)
    return FittedLinearModel(
        coefficients=beta,
        column_labels=X.column_labels,
        residuals=resid,
        residual_variance=s2,
        objective=gaussian_nll(rss, n),
        scores=vals * resid[:, None],
        covariance=0.5 * (cov + cov.T),
        n_obs=n,
        df_residual=df,
        rss=rss,
    )


def _solve_upper(r: np.ndarray, b: np.ndarray) -> np.ndarray:
    return solve_triangular(r, b, lower=False)


def wald_inference(fit: FittedLinearModel, coef_index) -> Inference:
    """t-based Wald summary for one coefficient (by index or label)."""
    j = fit.column_labels.index(coef_index) if isinstance(coef_index, str) else int(coef_index)
    if fit.df_residual < 1:
        raise DegenerateVariance("no residual degrees of freedom")
    se = math.sqrt(max(fit.covariance[j, j], 0.0))
    if se == 0.0 or fit.rss / fit.n_obs <= SIGMA2_FLOOR:
        raise DegenerateVariance(f"zero standard error for {fit.column_labels[j]!r}")
    est = float(fit.coefficients[j])
    df = fit.df_residual
    tq = stats.t.ppf(0.975, df)
    p = 2.0 * stats.t.sf(abs(est / se), df)
    return Inference(est, se, est - tq * se, est + tq * se, float(p))
