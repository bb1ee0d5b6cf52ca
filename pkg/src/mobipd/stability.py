"""Parameter-instability tests for candidate splitting variables.

Both tests work on the matrix of per-observation score contributions of a
fitted node model. Scores are re-centred on the rows actually used, then
whitened by the inverse square root of their cross-product, so the
statistics do not depend on the scale of the scores.

Numeric splitters use the supLM statistic: the maximum, over cut fractions
pi in [trim, 1 - trim], of ||W(pi)||^2 / (pi (1 - pi)) where W is the
whitened cumulative score process in splitter order. Cuts are only placed
between distinct splitter values, which makes the statistic a function of
the ranks of z alone. P-values come from a gamma approximation to the
asymptotic null distribution (see ``_suplm_table``).

Categorical splitters use the chi-square fluctuation statistic
sum_l ||W_l||^2 n / n_l with (L - 1) * k degrees of freedom.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats

from . import _suplm_table
from .errors import TooFewDistinct

SUPLM = "supLM"
CHISQ = "chi-square"
EIG_TOL = 1e-10
MIN_OBS = 10


@dataclass(frozen=True)
class InstabilityResult:
    variable: str
    statistic: float
    p_value: float
    kind: str
    n_used: int
    df: int = 0
    dropped_columns: tuple[int, ...] = ()


@dataclass(frozen=True)
class SplitChoice:
    variable: str
    adjusted_p: float


def whiten_scores(scores: np.ndarray) -> tuple[np.ndarray, tuple[int, ...]]:
    """Centre the columns and map them to an orthonormal basis of their span.

    Returns the whitened matrix (n x k, k = numerical rank) and the indices
    of columns dropped because they carry no variation.
    """
    psi = np.asarray(scores, dtype=float)
    if psi.ndim == 1:
        psi = psi[:, None]
    psi = psi - psi.mean(axis=0)
    scale = np.abs(psi).max(initial=0.0)
    colmax = np.abs(psi).max(axis=0) if psi.size else np.zeros(psi.shape[1])
    keep = colmax > 1e-12 * max(scale, 1e-300)
    dropped = tuple(int(j) for j in np.flatnonzero(~keep))
    psi = psi[:, keep]
    if psi.shape[1] == 0:
        return np.zeros((psi.shape[0], 0)), dropped
    # column equilibration before the eigen-decomposition keeps the rank test scale-free
    cn = np.sqrt((psi**2).sum(axis=0))
    psi = psi / cn
    d, u = np.linalg.eigh(psi.T @ psi)
    ok = d > EIG_TOL * d.max()
    return psi @ (u[:, ok] / np.sqrt(d[ok])), dropped


def suplm_pvalue(statistic: float, k: int, trim: float) -> float:
    """Approximate asymptotic p-value of a supLM statistic with k dimensions."""
    if k < 1:
        return 1.0
    if k > _suplm_table.P_MAX:
        raise ValueError(f"supLM p-values tabulated for up to {_suplm_table.P_MAX} parameters, got {k}")
    if not 0.0 < trim < 0.5:
        raise ValueError("trim must lie in (0, 0.5)")
    if statistic <= 0.0:
        return 1.0
    trims = _suplm_table.TRIMS
    if trim < trims[0]:
        raise ValueError(f"trim below {trims[0]} is not tabulated")

    def logsf(tr):
        if tr >= 0.5:
            # a single cut at the midpoint: exactly chi-square(k)
            return stats.chi2.logsf(statistic, k)
        a, s, _ = _suplm_table.TABLE[(k, tr)]
        return stats.gamma.logsf(statistic, a, scale=s)

    grid = list(trims) + [0.5]
    j = int(np.searchsorted(grid, trim, side="right")) - 1
    lo, hi = grid[j], grid[min(j + 1, len(grid) - 1)]
    if math.isclose(trim, lo) or hi == lo:
        return float(min(1.0, math.exp(logsf(lo))))
    w = (trim - lo) / (hi - lo)
    return float(min(1.0, math.exp((1 - w) * logsf(lo) + w * logsf(hi))))


def suplm_statistic(white: np.ndarray, z_sorted: np.ndarray, trim: float) -> float:
    """supLM over admissible cuts for rows already sorted by z."""
    n = white.shape[0]
    if white.shape[1] == 0:
        return 0.0
    cum = np.cumsum(white, axis=0)[:-1]
    i = np.arange(1, n)
    frac = i / n
    cand = (z_sorted[:-1] < z_sorted[1:]) & (frac >= trim - 1e-12) & (frac <= 1 - trim + 1e-12)
    if not cand.any():
        return 0.0
    q = (cum[cand] ** 2).sum(axis=1) / (frac[cand] * (1 - frac[cand]))
    return float(q.max())


def suplm_test(scores, z, trim: float = 0.1, variable: str = "z") -> InstabilityResult:
    z = np.asarray(z, dtype=float)
    psi = np.asarray(scores, dtype=float)
    used = ~np.isnan(z)
    zu = z[used]
    if np.unique(zu).size < 2:
        raise TooFewDistinct(f"{variable!r} has fewer than two distinct values")
    if zu.size < MIN_OBS:
        raise ValueError(f"supLM needs at least {MIN_OBS} observations, got {zu.size}")
    if not 0.0 < trim < 0.5:
        raise ValueError("trim must lie in (0, 0.5)")
    white, dropped = whiten_scores(psi[used])
    order = np.argsort(zu, kind="stable")
    stat = suplm_statistic(white[order], zu[order], trim)
    k = white.shape[1]
    return InstabilityResult(variable, stat, suplm_pvalue(stat, k, trim), SUPLM, int(zu.size), k, dropped)


def categorical_fluctuation_test(scores, z, variable: str = "z") -> InstabilityResult:
    """``z`` holds integer level codes, negative for missing."""
    z = np.asarray(z)
    psi = np.asarray(scores, dtype=float)
    used = z >= 0
    codes, zc = np.unique(z[used], return_inverse=True)
    L = codes.size
    if L < 2:
        raise TooFewDistinct(f"{variable!r} has fewer than two observed levels")
    white, dropped = whiten_scores(psi[used])
    n, k = white.shape
    if k == 0:
        return InstabilityResult(variable, 0.0, 1.0, CHISQ, int(n), 0, dropped)
    sums = np.zeros((L, k))
    np.add.at(sums, zc, white)
    counts = np.bincount(zc, minlength=L)
    stat = float(((sums**2).sum(axis=1) * n / counts).sum())
    df = (L - 1) * k
    return InstabilityResult(variable, stat, float(stats.chi2.sf(stat, df)), CHISQ, int(n), df, dropped)


def select_split_variable(results: Sequence[InstabilityResult], alpha: float) -> SplitChoice | None:
    """Bonferroni selection; ties go to the earliest result (schema order)."""
    if not results:
        return None
    m = len(results)
    best = None
    for r in results:
        adj = min(1.0, r.p_value * m)
        if best is None or adj < best.adjusted_p:
            best = SplitChoice(r.variable, adj)
    return best if best.adjusted_p < alpha else None
