"""Alternating estimation of a tree and a global model.

GLMM-tree: the tree is grown on the outcome minus the current random-effect
prediction, then a global linear mixed model is fitted whose fixed part
encodes the tree's leaves (leaf intercepts and leaf x treatment effects),
and its BLUPs become the next offset. The palmtree variant swaps the random
effects for fixed, reference-coded trial intercepts.

Stopping rules, checked in this order after each global fit:

1. the tree partition equals the previous one (or the next offset equals
   the current one, so the next tree would be identical);
2. the global objective changed by less than ``objective_tolerance``;
3. ``max_iterations`` reached (reported as not converged).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dataset import Dataset
from .errors import DegenerateVariance, RankDeficient, SingularGLS
from .linreg import DesignMatrix, FittedLinearModel, Inference, fit_ols, wald_inference
from .mixed import MixedModelFit, RandomSpec, fit_lmm, lmm_inference, predict_random_offset
from .mobtree import STRATIFIED, GrowControl, NodeModel, Tree, grow

TREE_STABLE = "tree-stable"
OBJECTIVE = "objective-tolerance"
MAX_ITER = "max-iterations"


@dataclass(frozen=True)
class AlternationControl:
    max_iterations: int = 100
    objective_tolerance: float = 1e-4
    tree_stability_stop: bool = True

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.objective_tolerance < 0:
            raise ValueError("objective_tolerance must be non-negative")

    def to_dict(self) -> dict:
        return {"max_iterations": self.max_iterations, "objective_tolerance": self.objective_tolerance,
                "tree_stability_stop": self.tree_stability_stop}


@dataclass(eq=False)
class GlmmTreeFit:
    tree: Tree
    mixed: MixedModelFit | None
    global_ols: FittedLinearModel | None
    iterations_used: int
    converged: bool
    stop_reason: str
    per_iteration_log: list[float]
    offset: np.ndarray = field(repr=False)
    dropped_columns: tuple[str, ...] = ()
    # variance ratios of the global mixed model at each iteration (empty for palmtree)
    theta_log: list[tuple[float, ...]] = field(default_factory=list)

    @property
    def global_labels(self) -> tuple[str, ...]:
        model = self.mixed if self.mixed is not None else self.global_ols
        return tuple(model.column_labels)

    def trial_intercepts(self) -> dict[str, float]:
        """Reference-coded global trial intercepts (palmtree only)."""
        if self.global_ols is None:
            return {}
        levels = self.tree.trial_levels
        out = {levels[0]: 0.0}
        for lvl in levels[1:]:
            lab = f"trial[{lvl}]"
            if lab in self.global_ols.column_labels:
                out[lvl] = self.global_ols.coef(lab)
        return out


def leaf_label(leaf_id: int) -> str:
    return f"leaf{leaf_id}"


def leaf_trt_label(leaf_id: int, treatment: str) -> str:
    return f"leaf{leaf_id}:{treatment}"


def global_design(ds: Dataset, tree: Tree, trial_dummies: bool) -> tuple[DesignMatrix, tuple[str, ...]]:
    """Leaf indicators, leaf x treatment columns and optional trial dummies 2..K.

    Columns that make the design rank-deficient are dropped (latest first)
    and returned as the second element.
    """
    assign = tree.leaf_assignment()
    t = ds.treatment.astype(float)
    cols, labels = [], []
    for leaf in tree.leaves():
        ind = (assign == leaf.id).astype(float)
        cols += [ind, ind * t]
        labels += [leaf_label(leaf.id), leaf_trt_label(leaf.id, ds.treatment_name)]
    if trial_dummies:
        for k in range(1, ds.K):
            cols.append((ds.trial == k).astype(float))
            labels.append(f"trial[{ds.trial_levels[k]}]")
    X = np.column_stack(cols)
    dropped: list[str] = []
    while True:
        dm = DesignMatrix(X, tuple(labels))
        try:
            fit_ols(dm, ds.y)
            return dm, tuple(dropped)
        except RankDeficient as exc:
            bad = [labels.index(c) for c in exc.columns]
            if not bad:
                raise
            j = max(bad)
            dropped.append(labels[j])
            X = np.delete(X, j, axis=1)
            labels.pop(j)


def _alternate(ds, node_model, splitters, grow_control, alt_control, method_label, global_step):
    offset = np.zeros(ds.n)
    prev_tree = None
    prev_obj = None
    log: list[float] = []
    thetas: list[tuple[float, ...]] = []
    reason = MAX_ITER
    converged = False
    it = 0
    for it in range(1, alt_control.max_iterations + 1):
        tree = grow(ds, node_model, splitters, grow_control, offset=offset, method_label=method_label)
        try:
            model, obj, new_offset, dropped = global_step(tree)
        except SingularGLS as exc:
            raise SingularGLS(exc.theta, f"iteration {it}: {exc}") from exc
        log.append(float(obj))
        if isinstance(model, MixedModelFit):
            thetas.append(model.theta)
        if alt_control.tree_stability_stop and (
            (prev_tree is not None and tree.same_partition(prev_tree)) or np.array_equal(new_offset, offset)
        ):
            reason, converged = TREE_STABLE, True
            break
        if prev_obj is not None and abs(obj - prev_obj) < alt_control.objective_tolerance:
            reason, converged = OBJECTIVE, True
            break
        prev_tree, prev_obj, offset = tree, obj, new_offset
    return tree, model, it, converged, reason, log, offset, dropped, thetas


def fit_glmm_tree(
    ds: Dataset,
    node_model: NodeModel,
    spec: RandomSpec,
    splitters: Sequence[str],
    grow_control: GrowControl | None = None,
    alt_control: AlternationControl | None = None,
    method_label: str = "GLMM-tree",
) -> GlmmTreeFit:
    grow_control = grow_control or GrowControl()
    alt_control = alt_control or AlternationControl()
    strat = node_model.intercept == STRATIFIED

    def step(tree):
        X, dropped = global_design(ds, tree, trial_dummies=strat)
        mixed = fit_lmm(X, ds.y, spec, ds.trial, ds.treatment, ds.K)
        return mixed, mixed.reml_objective, predict_random_offset(mixed, ds.trial, ds.treatment), dropped

    tree, mixed, it, conv, reason, log, offset, dropped, thetas = _alternate(
        ds, node_model, splitters, grow_control, alt_control, method_label, step)
    return GlmmTreeFit(tree, mixed, None, it, conv, reason, log, offset, dropped, thetas)


def fit_palmtree(
    ds: Dataset,
    splitters: Sequence[str],
    grow_control: GrowControl | None = None,
    alt_control: AlternationControl | None = None,
    method_label: str = "palmtree",
) -> GlmmTreeFit:
    grow_control = grow_control or GrowControl()
    alt_control = alt_control or AlternationControl()

    def step(tree):
        X, dropped = global_design(ds, tree, trial_dummies=True)
        ols = fit_ols(X, ds.y)
        gamma = np.zeros(ds.K)
        for k in range(1, ds.K):
            lab = f"trial[{ds.trial_levels[k]}]"
            if lab in ols.column_labels:
                gamma[k] = ols.coef(lab)
        return ols, ols.objective, gamma[ds.trial], dropped

    tree, ols, it, conv, reason, log, offset, dropped, _ = _alternate(
        ds, NodeModel(), splitters, grow_control, alt_control, method_label, step)
    return GlmmTreeFit(tree, None, ols, it, conv, reason, log, offset, dropped)


@dataclass(frozen=True)
class LeafEffect:
    leaf_id: int
    inference: Inference | None
    error: str | None = None


def leaf_treatment_effects(fit: GlmmTreeFit) -> dict[int, LeafEffect]:
    """Wald inference on each leaf x treatment coefficient of the final global model."""
    out = {}
    model = fit.mixed if fit.mixed is not None else fit.global_ols
    labels = model.column_labels
    for leaf in fit.tree.leaves():
        lab = next((c for c in labels if c.startswith(f"leaf{leaf.id}:")), None)
        if lab is None:
            out[leaf.id] = LeafEffect(leaf.id, None, "DegenerateVariance: treatment effect not estimable in this leaf")
            continue
        try:
            inf = lmm_inference(model, lab) if fit.mixed is not None else wald_inference(model, lab)
            out[leaf.id] = LeafEffect(leaf.id, inf)
        except DegenerateVariance as exc:
            out[leaf.id] = LeafEffect(leaf.id, None, f"DegenerateVariance: {exc}")
    return out
