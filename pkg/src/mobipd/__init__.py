"""Model-based recursive partitioning for treatment-effect subgroups in
individual participant data pooled from several trials."""

from .dataset import ColumnSpec, Dataset, default_schema, from_columns, ingest_csv, parse_schema
from .glmmtree import AlternationControl, GlmmTreeFit, fit_glmm_tree, fit_palmtree, leaf_treatment_effects
from .linreg import DesignMatrix, fit_ols, wald_inference
from .methods import (
    METHODS,
    MethodSpec,
    pooled_lm,
    pooled_lm_trial_adjusted,
    pooled_lmm_random_treatment,
    run_method,
)
from .mixed import RandomSpec, fit_lmm
from .mobtree import GrowControl, NodeModel, Tree, grow, predict_node, split_search
from .synthgen import GenScenario, generate, scenario_library

__version__ = "0.1.0"

__all__ = [
    "AlternationControl", "ColumnSpec", "Dataset", "DesignMatrix", "GenScenario", "GlmmTreeFit", "GrowControl",
    "METHODS", "MethodSpec", "NodeModel", "RandomSpec", "Tree", "default_schema", "fit_glmm_tree", "fit_lmm",
    "fit_ols", "fit_palmtree", "from_columns", "generate", "grow", "ingest_csv", "leaf_treatment_effects",
    "parse_schema", "pooled_lm", "pooled_lm_trial_adjusted", "pooled_lmm_random_treatment", "predict_node",
    "run_method", "scenario_library", "split_search", "wald_inference",
]
