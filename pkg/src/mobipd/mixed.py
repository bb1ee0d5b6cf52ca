"""Linear mixed models with a trial-level random intercept and/or random
treatment slope, fitted by profiled REML.

The covariance is V = sigma^2 (I + Z diag(theta) Z'), with one independent
component per requested random effect and theta the ratios tau^2 / sigma^2.
Everything is evaluated from per-trial sufficient statistics, so a criterion
evaluation costs O(K p^2) regardless of n. Variance components may sit
exactly on the zero boundary; that is the common outcome with few trials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg, optimize, stats

from .errors import DegenerateVariance, RankDeficient, SingularGLS
from .linreg import DesignMatrix, Inference, fit_ols

MAX_EVALUATIONS = 500
OBJECTIVE_TOL = 1e-8
# two objective values closer than this are treated as tied; ties go to the boundary
BOUNDARY_TIE = 1e-9


@dataclass(frozen=True)
class RandomSpec:
    random_intercept: bool = True
    random_slope_on_treatment: bool = False

    def __post_init__(self):
        if not (self.random_intercept or self.random_slope_on_treatment):
            raise ValueError("RandomSpec needs at least one random component")

    @property
    def components(self) -> tuple[str, ...]:
        out = []
        if self.random_intercept:
            out.append("intercept")
        if self.random_slope_on_treatment:
            out.append("treatment")
        return tuple(out)


@dataclass(frozen=True, eq=False)
class MixedModelFit:
    fixed_coefficients: np.ndarray
    column_labels: tuple[str, ...]
    fixed_covariance: np.ndarray
    tau0_sq: float
    tau1_sq: float
    sigma_sq: float
    theta: tuple[float, ...]
    blups: np.ndarray  # K x len(spec.components)
    reml_objective: float
    converged: bool
    n_obs: int
    K: int
    spec: RandomSpec
    n_evaluations: int = 0

    def coef(self, label: str) -> float:
        return float(self.fixed_coefficients[self.column_labels.index(label)])

    def blup(self, component: str) -> np.ndarray:
        if component not in self.spec.components:
            return np.zeros(self.K)
        return self.blups[:, self.spec.components.index(component)]


def random_design(spec: RandomSpec, treatment) -> np.ndarray:
    t = np.asarray(treatment, dtype=float)
    cols = []
    if spec.random_intercept:
        cols.append(np.ones_like(t))
    if spec.random_slope_on_treatment:
        cols.append(t)
    return np.column_stack(cols)


class RemlProblem:
    """Profiled REML criterion for one (X, y, Z, grouping) instance.

    ``y`` is replaced internally by its OLS residual; REML depends on the
    data only through error contrasts, so this changes nothing but the
    conditioning of the sums below.
    """

    def __init__(self, X: np.ndarray, y: np.ndarray, Z: np.ndarray, groups: np.ndarray, K: int):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        Z = np.asarray(Z, dtype=float)
        self.n, self.p = X.shape
        self.q = Z.shape[1]
        self.K = K
        self.beta_ols, *_ = np.linalg.lstsq(X, y, rcond=None)
        yt = y - X @ self.beta_ols
        g = np.asarray(groups)

        def gsum(a, b):
            # per-group a' b, shape (K, a.cols, b.cols)
            out = np.zeros((K, a.shape[1], b.shape[1]))
            prod = a[:, :, None] * b[:, None, :]
            np.add.at(out, g, prod)
            return out

        self.XtX = gsum(X, X).sum(axis=0)
        self.XtZ = gsum(X, Z)
        self.ZtZ = gsum(Z, Z)
        self.Xty = X.T @ yt
        self.Zty = np.zeros((K, self.q))
        np.add.at(self.Zty, g, Z * yt[:, None])
        self.yty = float(yt @ yt)
        self.n_eval = 0

    def _pieces(self, theta):
        theta = np.maximum(np.asarray(theta, dtype=float), 0.0)
        lam = np.sqrt(theta)
        lzzl = lam[None, :, None] * self.ZtZ * lam[None, None, :]
        M = lzzl + np.eye(self.q)[None]
        Minv = np.linalg.inv(M)
        _, logdets = np.linalg.slogdet(M)
        W = lam[None, :, None] * Minv * lam[None, None, :]
        XZW = np.einsum("kpq,kqr->kpr", self.XtZ, W)
        A = self.XtX - np.einsum("kpr,kmr->pm", XZW, self.XtZ)
        b = self.Xty - np.einsum("kpr,kr->p", XZW, self.Zty)
        c = self.yty - np.einsum("kq,kqr,kr->", self.Zty, W, self.Zty)
        return theta, W, A, b, c, float(logdets.sum())

    def evaluate(self, theta) -> dict:
        self.n_eval += 1
        theta, W, A, b, c, logdet_h = self._pieces(theta)
        A = 0.5 * (A + A.T)
        try:
            cf = linalg.cho_factor(A)
        except linalg.LinAlgError:
            raise SingularGLS(theta) from None
        delta = linalg.cho_solve(cf, b)
        rhr = max(c - float(b @ delta), 0.0)
        df = self.n - self.p
        sigma2 = rhr / df
        logdet_a = 2.0 * float(np.sum(np.log(np.diag(cf[0]))))
        if sigma2 <= 0.0:
            obj = -math.inf
        else:
            obj = 0.5 * (logdet_h + logdet_a + df * (1.0 + math.log(2.0 * math.pi * sigma2)))
        return {"theta": theta, "W": W, "A": A, "cf": cf, "delta": delta, "sigma2": sigma2, "objective": obj}

    def objective(self, theta) -> float:
        return self.evaluate(theta)["objective"]


def reml_objective(X, y, spec: RandomSpec, trial_of, treatment, K: int, theta) -> float:
    """Negative REML log-likelihood at variance ratios ``theta``."""
    prob = RemlProblem(np.asarray(X, float), np.asarray(y, float), random_design(spec, treatment), np.asarray(trial_of), K)
    return prob.objective(theta)


def _minimize_ratios(prob: RemlProblem) -> tuple[np.ndarray, bool]:
    """Nelder-Mead on u = log1p(theta) clamped at 0, with boundary restarts
    and a bounded quasi-Newton polish on the theta scale."""
    q = prob.q

    def f_u(u):
        return prob.objective(np.expm1(np.maximum(u, 0.0)))

    def nm(u0, budget):
        res = optimize.minimize(
            f_u, u0, method="Nelder-Mead",
            bounds=[(0.0, None)] * q,
            options={"maxfev": budget, "xatol": 1e-10, "fatol": OBJECTIVE_TOL, "initial_simplex": _simplex(u0)},
        )
        return np.maximum(res.x, 0.0), bool(res.success), res.nfev

    used = 0
    u, ok, nfev = nm(np.full(q, math.log1p(0.5)), MAX_EVALUATIONS)
    used += nfev
    theta = np.expm1(u)
    best = prob.objective(theta)
    if np.any(theta < 1e-3) and used < MAX_EVALUATIONS:
        u2, ok2, nfev = nm(np.where(theta < 1e-3, 0.0, u), MAX_EVALUATIONS - used)
        used += nfev
        th2 = np.expm1(u2)
        val = prob.objective(th2)
        if val < best:
            theta, best, ok = th2, val, ok2

    def polish(th0, free):
        if not np.any(free):
            return th0, prob.objective(th0)
        idx = np.flatnonzero(free)

        def f_sub(x):
            th = np.zeros(q)
            th[idx] = x
            return prob.objective(th)

        res = optimize.minimize(
            f_sub, th0[idx], method="L-BFGS-B", bounds=[(0.0, None)] * idx.size,
            options={"ftol": 1e-15, "gtol": 1e-10, "maxiter": 200},
        )
        th = np.zeros(q)
        th[idx] = np.maximum(res.x, 0.0)
        val = f_sub(th[idx])
        return th, val

    candidates = [(theta, best), polish(theta, np.ones(q, bool))]
    # the same problem with one or more components pinned at zero
    candidates += [polish(np.where(mask, theta, 0.0), mask) for mask in _boundary_masks(q)]
    lowest = min(v for _, v in candidates)
    tied = [(np.count_nonzero(th), v, i) for i, (th, v) in enumerate(candidates) if v <= lowest + BOUNDARY_TIE]
    theta = candidates[min(tied)[2]][0]
    return theta, ok


def _simplex(u0):
    q = len(u0)
    pts = [np.array(u0, float)]
    for j in range(q):
        v = np.array(u0, float)
        v[j] += 0.5
        pts.append(v)
    return np.array(pts)


def _boundary_masks(q):
    # True = component left free
    if q == 1:
        return [np.array([False])]
    return [np.array([False, True]), np.array([True, False]), np.array([False, False])]


def fit_lmm(X_fixed: DesignMatrix, y, spec: RandomSpec, trial_of, treatment=None, K: int | None = None) -> MixedModelFit:
    """REML fit of y = X beta + Z b + e with trial-level random effects.

    ``trial_of`` holds 0-based trial codes; ``treatment`` is required when
    ``spec`` has a random treatment slope. ``K`` defaults to max code + 1.
    """
    y = np.asarray(y, dtype=float)
    trial_of = np.asarray(trial_of, dtype=np.int64)
    K = int(trial_of.max()) + 1 if K is None else int(K)
    if treatment is None:
        if spec.random_slope_on_treatment:
            raise ValueError("treatment vector required for a random treatment slope")
        treatment = np.zeros_like(y)
    X = X_fixed.values
    n, p = X.shape
    if n <= p:
        raise SingularGLS([math.nan] * len(spec.components), f"{n} observations for {p} fixed effects")
    try:
        fit_ols(X_fixed, y)
    except RankDeficient as exc:
        raise SingularGLS([0.0] * len(spec.components), f"fixed-effect design rank-deficient: {list(exc.columns)}") from None

    Z = random_design(spec, treatment)
    prob = RemlProblem(X, y, Z, trial_of, K)
    theta, converged = _minimize_ratios(prob)
    ev = prob.evaluate(theta)
    beta = prob.beta_ols + ev["delta"]
    sigma2 = ev["sigma2"]
    cov = sigma2 * linalg.cho_solve(ev["cf"], np.eye(p))

    # BLUPs: b_k = diag(theta) Z_k' H_k^{-1} r_k
    ztr = prob.Zty - np.einsum("kpq,p->kq", prob.XtZ, ev["delta"])
    hinv_ztr = ztr - np.einsum("kqr,krs,ks->kq", prob.ZtZ, ev["W"], ztr)
    blups = theta[None, :] * hinv_ztr
    blups[:, theta == 0.0] = 0.0

    comps = spec.components
    tau = {c: float(sigma2 * theta[i]) for i, c in enumerate(comps)}
    return MixedModelFit(
        fixed_coefficients=beta,
        column_labels=X_fixed.column_labels,
        fixed_covariance=0.5 * (cov + cov.T),
        tau0_sq=tau.get("intercept", 0.0),
        tau1_sq=tau.get("treatment", 0.0),
        sigma_sq=float(sigma2),
        theta=tuple(float(v) for v in theta),
        blups=blups,
        reml_objective=float(ev["objective"]),
        converged=converged,
        n_obs=n,
        K=K,
        spec=spec,
        n_evaluations=prob.n_eval,
    )


def predict_random_offset(fit: MixedModelFit, trial_of, treatment) -> np.ndarray:
    """Per-observation random-effect contribution b0_k + b1_k * t."""
    k = np.asarray(trial_of, dtype=np.int64)
    t = np.asarray(treatment, dtype=float)
    if k.size and (k.min() < 0 or k.max() >= fit.K):
        raise IndexError("trial index out of range")
    out = np.zeros(k.shape, dtype=float)
    if fit.spec.random_intercept:
        out += fit.blup("intercept")[k]
    if fit.spec.random_slope_on_treatment:
        out += fit.blup("treatment")[k] * t
    return out


def lmm_inference(fit: MixedModelFit, coef_index) -> Inference:
    """Wald summary from the GLS covariance, normal reference distribution."""
    j = fit.column_labels.index(coef_index) if isinstance(coef_index, str) else int(coef_index)
    se = math.sqrt(max(fit.fixed_covariance[j, j], 0.0))
    if se == 0.0 or not math.isfinite(se):
        raise DegenerateVariance(f"zero standard error for {fit.column_labels[j]!r}")
    est = float(fit.fixed_coefficients[j])
    z = stats.norm.ppf(0.975)
    p = 2.0 * stats.norm.sf(abs(est / se))
    return Inference(est, se, est - z * se, est + z * se, float(p))
