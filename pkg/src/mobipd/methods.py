"""The six tree methods and the three pooled reference analyses.

======================  =================  =================================
method                  node intercept     global structure
======================  =================  =================================
MOB                     pooled             none
MOB-SI                  stratified         none
MOB-RI                  pooled             random intercept
metaMOB-RI              pooled             random intercept + random slope
metaMOB-SI              stratified         random slope
palmtree                pooled             fixed trial intercepts
======================  =================  =================================

Node models contain the treatment indicator only; the pooled analyses also
adjust for baseline RMDQ and use trial 1 as the reference level.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dataset import Dataset, subset
from .errors import ConfigError, DegenerateVariance, IncompatibleSpec, MissingColumn
from .glmmtree import AlternationControl, GlmmTreeFit, fit_glmm_tree, fit_palmtree, leaf_treatment_effects
from .linreg import DesignMatrix, FittedLinearModel, Inference, fit_ols, wald_inference
from .mixed import MixedModelFit, RandomSpec, fit_lmm, lmm_inference
from .mobtree import POOLED, STRATIFIED, GrowControl, NodeModel, Tree, grow

NONE = "none"
RANDOM_INTERCEPT = "random-intercept"
RANDOM_INTERCEPT_SLOPE = "random-intercept+random-slope"
RANDOM_SLOPE = "random-slope"
FIXED_TRIAL = "fixed-trial-intercepts"

# a trial with fewer participants than this in a leaf is flagged as underrepresented
UNDERREPRESENTED_BELOW = 5
DEFAULT_BASELINE = "rmdq0"


@dataclass(frozen=True)
class MethodSpec:
    name: str
    intercept: str
    global_structure: str

    @property
    def node_model(self) -> NodeModel:
        return NodeModel(self.intercept)

    @property
    def random_spec(self) -> RandomSpec | None:
        return {
            RANDOM_INTERCEPT: RandomSpec(True, False),
            RANDOM_INTERCEPT_SLOPE: RandomSpec(True, True),
            RANDOM_SLOPE: RandomSpec(False, True),
        }.get(self.global_structure)

    @property
    def trial_dependent(self) -> bool:
        return self.intercept == STRATIFIED or self.global_structure != NONE


METHODS = {
    m.name: m
    for m in (
        MethodSpec("MOB", POOLED, NONE),
        MethodSpec("MOB-SI", STRATIFIED, NONE),
        MethodSpec("MOB-RI", POOLED, RANDOM_INTERCEPT),
        MethodSpec("metaMOB-RI", POOLED, RANDOM_INTERCEPT_SLOPE),
        MethodSpec("metaMOB-SI", STRATIFIED, RANDOM_SLOPE),
        MethodSpec("palmtree", POOLED, FIXED_TRIAL),
    )
}


def method_spec(name: str) -> MethodSpec:
    try:
        return METHODS[name]
    except KeyError:
        raise ConfigError(f"unknown method {name!r}; choose from {', '.join(METHODS)}") from None


@dataclass(frozen=True)
class LeafReport:
    leaf_id: int
    n: int
    n_treated: int
    n_control: int
    mean_treated: float
    mean_control: float
    trial_counts: dict[str, int]
    underrepresented: tuple[str, ...]
    effect: Inference | None
    error: str | None = None

    def as_row(self) -> dict:
        e = self.effect
        row = {
            "leaf": self.leaf_id, "n": self.n, "n_treated": self.n_treated, "n_control": self.n_control,
            "estimate": e.estimate if e else None, "std_error": e.std_error if e else None,
            "ci95_low": e.ci95_low if e else None, "ci95_high": e.ci95_high if e else None,
            "p_value": e.p_value if e else None,
        }
        for lvl, c in self.trial_counts.items():
            row[f"n_trial_{lvl}"] = c
        row["underrepresented"] = ";".join(self.underrepresented)
        row["error"] = self.error or ""
        return row


@dataclass(eq=False)
class MethodResult:
    spec: MethodSpec
    tree: Tree
    glmm: GlmmTreeFit | None
    leaves: list[LeafReport]
    variance_components: dict[str, float] = field(default_factory=dict)
    runtime_seconds: float = 0.0

    @property
    def n_leaves(self) -> int:
        return self.tree.n_leaves


def _leaf_reports(ds: Dataset, tree: Tree, effects: dict[int, tuple[Inference | None, str | None]]) -> list[LeafReport]:
    out = []
    for leaf in tree.leaves():
        t = ds.treatment[leaf.rows]
        y = ds.y[leaf.rows]
        counts = {lvl: int(c) for lvl, c in zip(ds.trial_levels, leaf.trial_counts)}
        under = tuple(lvl for lvl, c in counts.items() if 0 < c < UNDERREPRESENTED_BELOW)
        inf, err = effects[leaf.id]
        out.append(LeafReport(
            leaf.id, leaf.n, int(t.sum()), int((t == 0).sum()),
            float(y[t == 1].mean()) if (t == 1).any() else float("nan"),
            float(y[t == 0].mean()) if (t == 0).any() else float("nan"),
            counts, under, inf, err,
        ))
    return out


def run_method(
    ds: Dataset,
    spec: MethodSpec | str,
    splitters: Sequence[str] | None = None,
    grow_control: GrowControl | None = None,
    alt_control: AlternationControl | None = None,
) -> MethodResult:
    if isinstance(spec, str):
        spec = method_spec(spec)
    if spec.trial_dependent and ds.K < 2:
        raise IncompatibleSpec(f"{spec.name} needs at least two trials, data has {ds.K}")
    splitters = ds.splitter_names if splitters is None else tuple(splitters)
    grow_control = grow_control or GrowControl()
    t0 = time.perf_counter()
    glmm = None
    vc: dict[str, float] = {}
    if spec.global_structure == NONE:
        tree = grow(ds, spec.node_model, splitters, grow_control, method_label=spec.name)
        effects = {}
        for leaf in tree.leaves():
            try:
                effects[leaf.id] = (wald_inference(leaf.model, ds.treatment_name), None)
            except DegenerateVariance as exc:
                effects[leaf.id] = (None, f"DegenerateVariance: {exc}")
    else:
        if spec.global_structure == FIXED_TRIAL:
            glmm = fit_palmtree(ds, splitters, grow_control, alt_control, method_label=spec.name)
            vc = {f"gamma[{k}]": v for k, v in glmm.trial_intercepts().items()}
        else:
            glmm = fit_glmm_tree(ds, spec.node_model, spec.random_spec, splitters, grow_control, alt_control,
                                 method_label=spec.name)
            m = glmm.mixed
            if spec.random_spec.random_intercept:
                vc["tau0_sq"] = m.tau0_sq
            if spec.random_spec.random_slope_on_treatment:
                vc["tau1_sq"] = m.tau1_sq
            vc["sigma_sq"] = m.sigma_sq
        tree = glmm.tree
        effects = {k: (v.inference, v.error) for k, v in leaf_treatment_effects(glmm).items()}
    return MethodResult(spec, tree, glmm, _leaf_reports(ds, tree, effects), vc, time.perf_counter() - t0)


@dataclass(eq=False)
class PooledResult:
    """Ordered inference table of a pooled analysis."""

    name: str
    table: dict[str, Inference]
    model: FittedLinearModel | MixedModelFit
    n_obs: int
    variance_components: dict[str, float] = field(default_factory=dict)

    def __getitem__(self, label: str) -> Inference:
        return self.table[label]

    def rows(self) -> list[dict]:
        return [{"term": k, **v.as_dict()} for k, v in self.table.items()]


def _pooled_design(ds: Dataset, adjust_baseline: bool, trial_dummies: bool, baseline: str):
    if adjust_baseline:
        if baseline not in ds.splitters:
            raise MissingColumn(f"baseline column {baseline!r} not in data")
        ds = subset(ds, ~np.isnan(ds.splitters[baseline]))
    cols = [np.ones(ds.n), ds.treatment.astype(float)]
    labels = ["(Intercept)", ds.treatment_name]
    if adjust_baseline:
        cols.append(ds.splitters[baseline])
        labels.append(baseline)
    if trial_dummies:
        present = ds.trial_counts() > 0
        for k in range(1, ds.K):
            if present[k]:
                cols.append((ds.trial == k).astype(float))
                labels.append(f"trial[{ds.trial_levels[k]}]")
    return ds, DesignMatrix(np.column_stack(cols), tuple(labels))


def pooled_lm(ds: Dataset, adjust_baseline: bool = True, baseline: str = DEFAULT_BASELINE) -> PooledResult:
    """Outcome on treatment (and baseline), ignoring trial membership."""
    sub, X = _pooled_design(ds, adjust_baseline, False, baseline)
    fit = fit_ols(X, sub.y)
    return PooledResult("pooled-lm", {c: wald_inference(fit, c) for c in X.column_labels[1:]}, fit, sub.n)


def pooled_lm_trial_adjusted(ds: Dataset, baseline: str = DEFAULT_BASELINE) -> PooledResult:
    if ds.K < 2:
        raise IncompatibleSpec("trial adjustment needs at least two trials")
    sub, X = _pooled_design(ds, True, True, baseline)
    fit = fit_ols(X, sub.y)
    return PooledResult("pooled-lm-trial", {c: wald_inference(fit, c) for c in X.column_labels[1:]}, fit, sub.n)


def pooled_lmm_random_treatment(ds: Dataset, baseline: str = DEFAULT_BASELINE) -> PooledResult:
    """Fixed trial intercepts, random treatment effect across trials."""
    if ds.K < 2:
        raise IncompatibleSpec("a random treatment effect across trials needs at least two trials")
    sub, X = _pooled_design(ds, True, True, baseline)
    fit = fit_lmm(X, sub.y, RandomSpec(False, True), sub.trial, sub.treatment, sub.K)
    table = {c: lmm_inference(fit, c) for c in X.column_labels[1:]}
    return PooledResult("pooled-lmm", table, fit, sub.n, {"tau1_sq": fit.tau1_sq, "sigma_sq": fit.sigma_sq})
