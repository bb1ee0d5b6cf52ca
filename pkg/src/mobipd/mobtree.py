"""Model-based recursive partitioning.

At each node a linear model for the outcome (pooled intercept or one
intercept per trial, plus the treatment indicator) is fitted, every
candidate splitting variable is tested for parameter instability, and the
Bonferroni-best variable is split at the cut that minimises the summed
negative log-likelihood of the two child models. Growth stops when no
variable is significant, the node is too small or too deep, or no
admissible cut exists.

Conventions:

* numeric splits send ``z <= threshold`` left; categorical splits send the
  levels in ``left_levels`` left;
* rows missing the split variable follow the child that received more of
  the rows used to choose the cut (left on ties);
* node ids are assigned in level order after growth, root = 1.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .dataset import CATEGORICAL, NUMERIC, Dataset
from .errors import RankDeficient, RootUnfittable, TooFewDistinct, Underdetermined
from .linreg import DesignMatrix, FittedLinearModel, fit_ols, gaussian_nll
from .stability import (
    InstabilityResult,
    SplitChoice,
    categorical_fluctuation_test,
    select_split_variable,
    suplm_test,
)

SCHEMA_VERSION = 1
POOLED = "pooled"
STRATIFIED = "stratified"

NO_INSTABILITY = "no-significant-instability"
MIN_SIZE = "min-size"
MAX_DEPTH = "max-depth"
RANK_DEFICIENT = "rank-deficient"
NO_VALID_SPLIT = "no-valid-split"

MAX_EXHAUSTIVE_LEVELS = 10
GRAM_EIG_TOL = 1e-10
# prefix-sum objectives within this relative distance of the best are re-checked by QR refits
REFIT_BAND = 1e-9


@dataclass(frozen=True)
class NodeModel:
    """Local model fitted in every node: intercept(s) + treatment (+ covariates)."""

    intercept: str = POOLED
    covariates: tuple[str, ...] = ()

    def __post_init__(self):
        if self.intercept not in (POOLED, STRATIFIED):
            raise ValueError(f"intercept must be {POOLED!r} or {STRATIFIED!r}")
        object.__setattr__(self, "covariates", tuple(self.covariates))

    def n_params(self, ds: Dataset) -> int:
        base = 1 if self.intercept == POOLED else ds.K
        return base + 1 + len(self.covariates)

    def labels(self, ds: Dataset, present) -> tuple[str, ...]:
        if self.intercept == POOLED:
            head = ["(Intercept)"]
        else:
            head = [f"trial[{ds.trial_levels[k]}]" for k in present]
        return tuple(head + [ds.treatment_name] + list(self.covariates))

    def design(self, ds: Dataset, rows: np.ndarray) -> DesignMatrix:
        rows = np.asarray(rows)
        n = rows.size
        if self.intercept == POOLED:
            present = []
            cols = [np.ones(n)]
        else:
            present = np.flatnonzero(np.bincount(ds.trial[rows], minlength=ds.K))
            tk = ds.trial[rows]
            cols = [(tk == k).astype(float) for k in present]
        cols.append(ds.treatment[rows].astype(float))
        for c in self.covariates:
            cols.append(ds.splitters[c][rows].astype(float))
        return DesignMatrix(np.column_stack(cols), self.labels(ds, present))

    def to_dict(self) -> dict:
        return {"intercept": self.intercept, "covariates": list(self.covariates)}


@dataclass(frozen=True)
class GrowControl:
    alpha: float = 0.05
    min_node_size: int | None = None
    max_depth: int | None = None
    trim: float = 0.1
    verbose: bool = False
    threads: int = 1
    min_trial_count: int = 2

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if not 0.0 < self.trim < 0.5:
            raise ValueError("trim must lie in (0, 0.5)")
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError("max_depth must be non-negative")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    def resolved_min_size(self, n_params: int) -> int:
        if self.min_node_size is None:
            return 10 * n_params
        if self.min_node_size < 2 * n_params:
            raise ValueError(f"min_node_size must be at least 2 x {n_params} parameters")
        return int(self.min_node_size)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha, "min_node_size": self.min_node_size, "max_depth": self.max_depth,
            "trim": self.trim, "min_trial_count": self.min_trial_count,
        }


@dataclass(frozen=True)
class Split:
    variable: str
    kind: str
    threshold: float | None = None
    left_levels: tuple[str, ...] | None = None
    left_codes: tuple[int, ...] | None = None
    missing_goes_left: bool = True
    objective: float = math.nan
    left_objective: float = math.nan
    right_objective: float = math.nan

    def goes_left(self, z: np.ndarray) -> np.ndarray:
        """Routing for an array of raw splitter values (NaN / -1 = missing)."""
        z = np.asarray(z)
        if self.kind == NUMERIC:
            miss = np.isnan(z)
            left = np.where(miss, False, z <= self.threshold)
        else:
            miss = z < 0
            left = np.isin(z, np.asarray(self.left_codes, dtype=z.dtype))
        return np.where(miss, self.missing_goes_left, left)

    def routing(self) -> tuple:
        """Fields that decide where rows go, without fit statistics."""
        return (self.variable, self.kind, self.threshold, self.left_codes, self.missing_goes_left)

    def describe(self) -> str:
        if self.kind == NUMERIC:
            return f"{self.variable} <= {self.threshold:g}"
        return f"{self.variable} in {{{', '.join(self.left_levels)}}}"

    def to_dict(self) -> dict:
        d = {"variable": self.variable, "kind": self.kind, "missing_goes_left": self.missing_goes_left,
             "objective": self.objective}
        if self.kind == NUMERIC:
            d["threshold"] = self.threshold
        else:
            d["left_levels"] = list(self.left_levels)
        return d


@dataclass(eq=False)
class TreeNode:
    id: int
    depth: int
    rows: np.ndarray = field(repr=False)
    model: FittedLinearModel = field(repr=False)
    trial_counts: np.ndarray = field(repr=False)
    split: Split | None = None
    children: tuple["TreeNode", "TreeNode"] | None = None
    tests: tuple[InstabilityResult, ...] = ()
    untestable: tuple[str, ...] = ()
    selected: SplitChoice | None = None
    termination: str | None = None

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    @property
    def n(self) -> int:
        return int(self.rows.size)

    def to_dict(self, trial_levels: Sequence[str]) -> dict:
        return {
            "id": self.id,
            "depth": self.depth,
            "n": self.n,
            "trial_counts": {lvl: int(c) for lvl, c in zip(trial_levels, self.trial_counts)},
            "coefficients": dict(zip(self.model.column_labels, self.model.coefficients.tolist())),
            "objective": self.model.objective,
            "split": None if self.split is None else self.split.to_dict(),
            "children": None if self.children is None else [c.id for c in self.children],
            "termination": self.termination,
            "tests": [
                {"variable": t.variable, "statistic": t.statistic, "p_value": t.p_value, "kind": t.kind,
                 "n_used": t.n_used, "df": t.df}
                for t in self.tests
            ],
            "untestable": list(self.untestable),
            "selected": None if self.selected is None else
            {"variable": self.selected.variable, "adjusted_p": self.selected.adjusted_p},
        }


@dataclass(eq=False)
class Tree:
    root: TreeNode
    method_label: str
    node_model: NodeModel
    splitters: tuple[str, ...]
    control: GrowControl
    trial_levels: tuple[str, ...]
    n_obs: int

    def nodes(self) -> list[TreeNode]:
        """All nodes in level order."""
        out, queue = [], [self.root]
        while queue:
            nxt = []
            for node in queue:
                out.append(node)
                if node.children:
                    nxt.extend(node.children)
            queue = nxt
        return out

    def leaves(self) -> list[TreeNode]:
        return [n for n in self.nodes() if n.is_leaf]

    @property
    def n_leaves(self) -> int:
        return len(self.leaves())

    def node(self, node_id: int) -> TreeNode:
        for n in self.nodes():
            if n.id == node_id:
                return n
        raise KeyError(node_id)

    def leaf_assignment(self) -> np.ndarray:
        """Leaf id of every training row, as recorded during growth."""
        out = np.zeros(self.n_obs, dtype=np.int64)
        for leaf in self.leaves():
            out[leaf.rows] = leaf.id
        return out

    @property
    def growth_log(self) -> list[str]:
        lines = []
        for node in self.nodes():
            if node.split is not None:
                lines.append(f"node {node.id} (n={node.n}): split {node.split.describe()} "
                             f"(adjusted p={node.selected.adjusted_p:.3g})")
            else:
                lines.append(f"node {node.id} (n={node.n}): leaf, {node.termination}")
        return lines

    def to_dict(self, include_method: bool = True) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "node_model": self.node_model.to_dict(),
            "splitters": list(self.splitters),
            "control": self.control.to_dict(),
            "n_obs": self.n_obs,
            "n_leaves": self.n_leaves,
            "nodes": [n.to_dict(self.trial_levels) for n in self.nodes()],
        }
        if include_method:
            d["method"] = self.method_label
        return d

    def to_json(self, include_method: bool = True) -> str:
        return json.dumps(self.to_dict(include_method), sort_keys=True, indent=1, allow_nan=True)

    def structure_json(self) -> str:
        """Serialization without the method label, for comparing engines."""
        return self.to_json(include_method=False)

    def same_partition(self, other: "Tree") -> bool:
        a = [(n.id, None if n.split is None else n.split.routing()) for n in self.nodes()]
        b = [(n.id, None if n.split is None else n.split.routing()) for n in other.nodes()]
        if a != b:
            return False
        return bool(np.array_equal(self.leaf_assignment(), other.leaf_assignment()))


def _fit_node(ds: Dataset, rows: np.ndarray, node_model: NodeModel, yw: np.ndarray) -> FittedLinearModel:
    X = node_model.design(ds, rows)
    return fit_ols(X, yw[rows])


def _test_variable(ds: Dataset, rows, fit: FittedLinearModel, var: str, trim: float):
    z = ds.splitters[var][rows]
    try:
        if ds.kind_of(var) == NUMERIC:
            return suplm_test(fit.scores, z, trim=trim, variable=var)
        return categorical_fluctuation_test(fit.scores, z, variable=var)
    except (TooFewDistinct, ValueError):
        return None


@dataclass
class _Candidate:
    objective: float
    order: int
    left_rows: np.ndarray
    right_rows: np.ndarray
    payload: dict


def _gram_stats(X: np.ndarray, yc: np.ndarray):
    G = X[:, :, None] * X[:, None, :]
    c = X * yc[:, None]
    return G, c, yc**2


def _child_rss(G: np.ndarray, c: np.ndarray, yy: np.ndarray):
    """RSS and full-rank flag of OLS fits from stacked sufficient statistics."""
    p = G.shape[-1]
    diag = np.einsum("kii->ki", G)
    absent = diag <= 0.0
    Gs = G.copy()
    idx = np.arange(p)
    Gs[:, idx, idx] = np.where(absent, 1.0, diag)
    d = np.sqrt(np.einsum("kii->ki", Gs))
    corr = Gs / d[:, :, None] / d[:, None, :]
    eig = np.linalg.eigvalsh(corr)
    full = eig[:, 0] > GRAM_EIG_TOL
    rss = np.full(G.shape[0], np.inf)
    if full.any():
        sol = np.linalg.solve(Gs[full], c[full][:, :, None])[:, :, 0]
        rss[full] = np.maximum(yy[full] - np.einsum("kp,kp->k", c[full], sol), 0.0)
    return rss, full


def _nll_vec(rss: np.ndarray, n: np.ndarray) -> np.ndarray:
    s2 = np.maximum(rss / n, 1e-12)
    return 0.5 * n * (np.log(2.0 * np.pi * s2) + 1.0)


def _trial_guard(counts: np.ndarray, min_count: int) -> np.ndarray:
    return np.all((counts == 0) | (counts >= min_count), axis=1)


@dataclass
class SearchOutcome:
    split: Split | None
    left_rows: np.ndarray | None = None
    right_rows: np.ndarray | None = None
    left_fit: FittedLinearModel | None = None
    right_fit: FittedLinearModel | None = None
    n_candidates: int = 0
    n_size_rejected: int = 0
    n_fit_rejected: int = 0

    @property
    def reason(self) -> str:
        if self.split is not None:
            return ""
        return RANK_DEFICIENT if self.n_fit_rejected > 0 else NO_VALID_SPLIT


def split_search(
    ds: Dataset,
    rows: np.ndarray,
    node_model: NodeModel,
    variable: str,
    control: GrowControl,
    offset=None,
    min_size: int | None = None,
) -> SearchOutcome:
    """Objective-minimising binary split of ``rows`` on ``variable``.

    Admissible cuts leave at least ``min_size`` used rows on each side and a
    fittable node model in both children: full-rank design and, for
    stratified intercepts, every trial present in a child with at least
    ``control.min_trial_count`` rows.
    """
    rows = np.asarray(rows)
    yw = ds.y if offset is None else ds.y - np.asarray(offset, dtype=float)
    if min_size is None:
        min_size = control.resolved_min_size(node_model.n_params(ds))
    z_all = ds.splitters[variable][rows]
    kind = ds.kind_of(variable)
    miss = np.isnan(z_all) if kind == NUMERIC else z_all < 0
    used = rows[~miss]
    zu = z_all[~miss]
    out = SearchOutcome(None)
    if used.size < 2 * min_size:
        return out

    X = node_model.design(ds, used).values
    yc = yw[used] - yw[used].mean()
    G, c, yy = _gram_stats(X, yc)
    K = ds.K
    tc = np.zeros((used.size, K))
    tc[np.arange(used.size), ds.trial[used]] = 1.0

    if kind == NUMERIC:
        order = np.lexsort((used, zu))
        zs = zu[order]
        cg, cc, cy, ct = (np.cumsum(a[order], axis=0) for a in (G, c, yy, tc))
        pos = np.flatnonzero(zs[:-1] < zs[1:])  # cut after sorted position pos
        nl = pos + 1
        masks_left = None
        sel = pos
    else:
        codes = np.unique(zu)
        L = codes.size
        if L < 2:
            return out
        lvl_idx = np.searchsorted(codes, zu)
        gs = np.zeros((L,) + G.shape[1:])
        np.add.at(gs, lvl_idx, G)
        gc = np.zeros((L, c.shape[1]))
        np.add.at(gc, lvl_idx, c)
        gy = np.bincount(lvl_idx, weights=yy, minlength=L)
        gt = np.zeros((L, K))
        np.add.at(gt, lvl_idx, tc)
        gn = np.bincount(lvl_idx, minlength=L)
        if L <= MAX_EXHAUSTIVE_LEVELS:
            # level 0 always left; every other subset of the remaining levels, full set excluded
            m = np.arange(2 ** (L - 1) - 1)
            bits = ((m[:, None] >> np.arange(L - 1)[None, :]) & 1).astype(bool)
            masks_left = np.column_stack([np.ones(m.size, bool), bits])
        else:
            fit = fit_ols(DesignMatrix(X, node_model.labels(ds, _present(ds, used, node_model))), yc)
            tcol = node_model.labels(ds, _present(ds, used, node_model)).index(ds.treatment_name)
            score_mean = np.bincount(lvl_idx, weights=fit.scores[:, tcol], minlength=L) / gn
            rank = np.argsort(score_mean, kind="stable")
            masks_left = np.zeros((L - 1, L), bool)
            for j in range(L - 1):
                masks_left[j, rank[: j + 1]] = True
        mf = masks_left.astype(float)
        cg = np.einsum("ml,lpq->mpq", mf, gs)
        cc = mf @ gc
        cy = mf @ gy
        ct = mf @ gt
        nl = masks_left.astype(np.int64) @ gn
        sel = np.arange(masks_left.shape[0])

    n = used.size
    totG, totc, toty, tott = G.sum(0), c.sum(0), yy.sum(), tc.sum(0)
    lG, lc, ly, lt = cg[sel], cc[sel], cy[sel], ct[sel]
    rG, rc, ry, rt = totG - lG, totc - lc, toty - ly, tott - lt
    nr = n - nl
    size_ok = (nl >= min_size) & (nr >= min_size)
    out.n_candidates = int(sel.size)
    out.n_size_rejected = int((~size_ok).sum())
    if not size_ok.any():
        return out
    guard = np.ones(sel.size, bool)
    if node_model.intercept == STRATIFIED:
        guard = _trial_guard(lt, control.min_trial_count) & _trial_guard(rt, control.min_trial_count)
    cand = np.flatnonzero(size_ok)
    lrss, lfull = _child_rss(lG[cand], lc[cand], ly[cand])
    rrss, rfull = _child_rss(rG[cand], rc[cand], ry[cand])
    fittable = lfull & rfull & guard[cand]
    out.n_fit_rejected = int((~fittable).sum())
    cand = cand[fittable]
    if cand.size == 0:
        return out
    obj = _nll_vec(lrss[fittable], nl[cand]) + _nll_vec(rrss[fittable], nr[cand])

    def rows_for(j):
        if kind == NUMERIC:
            k = pos[j]
            left_sorted = order[: k + 1]
            lmask = np.zeros(n, bool)
            lmask[left_sorted] = True
        else:
            lmask = masks_left[j][lvl_idx]
        return used[lmask], used[~lmask]

    best_val = obj.min()
    ranked = np.lexsort((cand, obj))
    # confirm the leading candidates with QR refits; those are authoritative
    chosen = None
    for r in ranked:
        j = cand[r]
        if chosen is not None and obj[r] > best_val + REFIT_BAND * max(1.0, abs(best_val)) and obj[r] > chosen[0]:
            break
        lrows, rrows = rows_for(j)
        try:
            lf = fit_ols(node_model.design(ds, lrows), yw[lrows])
            rf = fit_ols(node_model.design(ds, rrows), yw[rrows])
        except (RankDeficient, Underdetermined):
            out.n_fit_rejected += 1
            continue
        val = lf.objective + rf.objective
        if chosen is None or val < chosen[0]:
            chosen = (val, j, lrows, rrows, lf, rf)
    if chosen is None:
        return out
    val, j, lrows, rrows, lf, rf = chosen
    missing_left = lrows.size >= rrows.size
    if kind == NUMERIC:
        k = pos[j]
        thr = float((zs[k] + zs[k + 1]) / 2.0)
        split = Split(variable, NUMERIC, threshold=thr, missing_goes_left=missing_left,
                      objective=val, left_objective=lf.objective, right_objective=rf.objective)
    else:
        lc_codes = tuple(int(v) for v in codes[masks_left[j]])
        lv = ds.levels[variable]
        split = Split(variable, CATEGORICAL, left_levels=tuple(lv[v] for v in lc_codes), left_codes=lc_codes,
                      missing_goes_left=missing_left, objective=val,
                      left_objective=lf.objective, right_objective=rf.objective)
    out.split = split
    out.left_rows, out.right_rows, out.left_fit, out.right_fit = lrows, rrows, lf, rf
    return out


def _present(ds: Dataset, rows, node_model: NodeModel):
    if node_model.intercept == POOLED:
        return []
    return np.flatnonzero(np.bincount(ds.trial[rows], minlength=ds.K))


def grow(
    ds: Dataset,
    node_model: NodeModel,
    splitters: Sequence[str],
    control: GrowControl | None = None,
    offset=None,
    method_label: str = "MOB",
) -> Tree:
    control = control or GrowControl()
    splitters = tuple(splitters)
    for s in splitters:
        if ds.kind_of(s) not in (NUMERIC, CATEGORICAL):
            raise ValueError(f"{s!r} is not a splitter column")
    for c in node_model.covariates:
        if np.isnan(ds.splitters[c]).any():
            raise ValueError(f"node covariate {c!r} has missing values")
    yw = ds.y if offset is None else ds.y - np.asarray(offset, dtype=float)
    min_size = control.resolved_min_size(node_model.n_params(ds))
    all_rows = np.arange(ds.n)
    try:
        root_fit = _fit_node(ds, all_rows, node_model, yw)
    except (RankDeficient, Underdetermined) as exc:
        raise RootUnfittable(f"node model cannot be fitted on the full data: {exc}") from exc

    pool = ThreadPoolExecutor(control.threads) if control.threads > 1 else None
    try:
        root = TreeNode(0, 0, all_rows, root_fit, np.bincount(ds.trial, minlength=ds.K))
        stack = [root]
        while stack:
            node = stack.pop()
            _expand(ds, node, node_model, splitters, control, yw, min_size, pool)
            if node.children:
                stack.extend(reversed(node.children))
    finally:
        if pool is not None:
            pool.shutdown()

    tree = Tree(root, method_label, node_model, splitters, control, ds.trial_levels, ds.n)
    for i, node in enumerate(tree.nodes(), start=1):
        node.id = i
    return tree


def _expand(ds, node: TreeNode, node_model, splitters, control, yw, min_size, pool):
    rows = node.rows
    if not splitters:
        node.termination = NO_INSTABILITY
        return
    if control.max_depth is not None and node.depth >= control.max_depth:
        node.termination = MAX_DEPTH
        return
    if rows.size < 2 * min_size:
        node.termination = MIN_SIZE
        return

    def run(v):
        return _test_variable(ds, rows, node.model, v, control.trim)

    results = list(pool.map(run, splitters)) if pool is not None else [run(v) for v in splitters]
    node.untestable = tuple(v for v, r in zip(splitters, results) if r is None)
    node.tests = tuple(r for r in results if r is not None)
    choice = select_split_variable(node.tests, control.alpha)
    if choice is None:
        node.selected = None
        node.termination = NO_INSTABILITY
        return
    node.selected = choice
    found = split_search(ds, rows, node_model, choice.variable, control, offset=ds.y - yw, min_size=min_size)
    if found.split is None:
        node.termination = found.reason
        return
    split = found.split
    z = ds.splitters[split.variable][rows]
    left_mask = split.goes_left(z)
    lrows, rrows = rows[left_mask], rows[~left_mask]
    children = []
    for crow, evaluated, cfit in ((lrows, found.left_rows, found.left_fit), (rrows, found.right_rows, found.right_fit)):
        if crow.size != evaluated.size:
            cfit = _fit_node(ds, crow, node_model, yw)
        children.append(TreeNode(0, node.depth + 1, crow, cfit, np.bincount(ds.trial[crow], minlength=ds.K)))
    node.split = split
    node.children = (children[0], children[1])


def _route_value(split: Split, value, ds_levels: Mapping[str, tuple[str, ...]]) -> bool:
    if split.kind == NUMERIC:
        if value is None or (isinstance(value, float) and math.isnan(value)):
            return split.missing_goes_left
        return float(value) <= split.threshold
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return split.missing_goes_left
    label = str(value)
    if label in split.left_levels:
        return True
    if label in ds_levels.get(split.variable, ()):
        return False
    return split.missing_goes_left


def predict_node(tree: Tree, row: Mapping, levels: Mapping[str, tuple[str, ...]] | None = None) -> int:
    """Leaf id for one participant given as ``{variable: value}``.

    Categorical values are level labels; unseen levels and missing values
    are routed like missing values.
    """
    node = tree.root
    levels = levels or {}
    while node.children is not None:
        left = _route_value(node.split, row.get(node.split.variable), levels)
        node = node.children[0] if left else node.children[1]
    return node.id


def assign_leaves(tree: Tree, ds: Dataset) -> np.ndarray:
    """Vectorised leaf ids for all rows of ``ds`` (same schema as training)."""
    out = np.zeros(ds.n, dtype=np.int64)

    def walk(node, idx):
        if node.children is None:
            out[idx] = node.id
            return
        z = ds.splitters[node.split.variable][idx]
        split = node.split
        if split.kind == CATEGORICAL:
            # map codes through labels so trees apply to datasets with other level orders
            labels = ds.levels[split.variable]
            lv = set(split.left_levels)
            left = np.array([split.missing_goes_left if k < 0 else (labels[k] in lv) for k in z], dtype=bool)
        else:
            left = split.goes_left(z)
        walk(node.children[0], idx[left])
        walk(node.children[1], idx[~left])

    walk(tree.root, np.arange(ds.n))
    return out


def leaf_rows(tree: Tree) -> dict[int, np.ndarray]:
    return {leaf.id: leaf.rows for leaf in tree.leaves()}


def node_objective_total(tree: Tree) -> float:
    return float(sum(leaf.model.objective for leaf in tree.leaves()))


def gaussian_objective(rss: float, n: int) -> float:
    return gaussian_nll(rss, n)
