"""Synthetic multi-trial low-back-pain data with known ground truth.

Each participant gets

    y = intercept[k] + slope * rmdq0 + effect * trt + e,   e ~ N(0, error_sd^2)

where ``effect`` is the trial's treatment effect plus, when a subgroup rule
is planted, the rule's inside/outside effect. Baseline RMDQ and age are
rounded, clamped normals per trial; sex is Bernoulli per trial. Treatment
is allocated by complete randomization with a fixed number of treated
participants per trial (round(fraction * size)).

Random numbers come from Philox4x64 counter-based generators, one per
column, keyed by ``SeedSequence(seed, spawn_key=(crc32(column),))``. Adding
a column therefore never changes the draws of existing columns.
"""

from __future__ import annotations

import configparser
import dataclasses
import json
import zlib
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .dataset import Dataset, default_schema, from_columns

RMDQ_MIN, RMDQ_MAX = 0, 24
AGE_MIN, AGE_MAX = 18, 90

# calibrated to published per-trial summaries (scripts/calibrate_synthgen.py):
# (mean, sd) chosen to match per-trial median and IQR, with <= 4% of baseline RMDQ draws outside 0..24 and
# trial 3's sd capped so its sample median stays within 1.5 of target.
TABLE1_SIZES = (1087, 232, 53, 176)
TABLE1_ALLOCATION = (0.74, 0.47, 0.42, 0.47)
TABLE1_MALE = (0.44, 0.56, 0.70, 0.35)
TABLE1_RMDQ0 = ((8.1, 4.85), (13.1, 5.2), (13.75, 4.0), (5.15, 2.95))
TABLE1_AGE = ((43.9, 12.6), (41.0, 13.35), (43.9, 14.1), (40.25, 11.1))
# intercepts relative to trial 1 follow the trial-adjusted pooled model (-5.8, -2.2, -1.3)
TABLE1_INTERCEPTS = (1.6, -4.2, -0.6, 0.3)
# trial 1 raised so the treatment estimate that ignores trial is centred on zero
CONFOUNDED_INTERCEPTS = (2.6, -4.2, -0.6, 0.3)
DEFAULT_SLOPE = 0.4


@dataclass(frozen=True)
class SubgroupRule:
    """Participants with ``variable > threshold`` are inside the subgroup."""

    variable: str = "rmdq0"
    threshold: float = 9.0
    inside_effect: float = -2.0
    outside_effect: float = 0.0

    def inside(self, values: np.ndarray) -> np.ndarray:
        return np.asarray(values) > self.threshold


@dataclass(frozen=True)
class GenScenario:
    name: str
    trial_sizes: tuple[int, ...]
    allocation_fractions: tuple[float, ...]
    trial_intercepts: tuple[float, ...]
    trial_treatment_effects: tuple[float, ...] | None = None
    mean_treatment_effect: float = 0.0
    tau1: float = 0.0
    subgroup_rule: SubgroupRule | None = None
    rmdq0_dist: tuple[tuple[float, float], ...] = ()
    age_dist: tuple[tuple[float, float], ...] = ()
    male_prob: tuple[float, ...] = ()
    slope: float = DEFAULT_SLOPE
    error_sd: float = 4.5
    missing: tuple[tuple[str, int], ...] = ()
    seed: int = 1

    def __post_init__(self):
        K = len(self.trial_sizes)
        if K < 1 or any(int(s) <= 0 for s in self.trial_sizes):
            raise ValueError("trial_sizes must be positive")
        for name in ("allocation_fractions", "trial_intercepts", "rmdq0_dist", "age_dist", "male_prob"):
            if len(getattr(self, name)) != K:
                raise ValueError(f"{name} needs one entry per trial ({K})")
        if self.trial_treatment_effects is not None and len(self.trial_treatment_effects) != K:
            raise ValueError("trial_treatment_effects needs one entry per trial")
        if not all(0.0 < a < 1.0 for a in self.allocation_fractions):
            raise ValueError("allocation fractions must lie in (0, 1)")
        if not self.error_sd >= 0.0:
            raise ValueError("error_sd must be non-negative")
        if self.tau1 < 0:
            raise ValueError("tau1 must be non-negative")

    @property
    def K(self) -> int:
        return len(self.trial_sizes)

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


@dataclass(frozen=True, eq=False)
class GroundTruth:
    scenario: GenScenario
    trial_treatment_effects: tuple[float, ...]
    true_effect: np.ndarray = field(repr=False)
    in_subgroup: np.ndarray = field(repr=False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "scenario": self.scenario.to_dict(),
            "trial_treatment_effects": list(self.trial_treatment_effects),
            "n_raw": int(self.true_effect.size),
            "n_in_subgroup": int(self.in_subgroup.sum()),
        }


@dataclass(frozen=True, eq=False)
class Simulation:
    raw: dict[str, list]
    dataset: Dataset
    truth: GroundTruth


def stream(seed: int, column: str) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=(zlib.crc32(column.encode()),))
    return np.random.Generator(np.random.Philox(ss))


def _rounded_normal(rng, size, mean, sd, lo, hi):
    return np.clip(np.rint(rng.normal(mean, sd, size)), lo, hi)


def generate(scenario: GenScenario) -> Simulation:
    sc = scenario
    seed = sc.seed
    sizes = [int(s) for s in sc.trial_sizes]
    n = sum(sizes)
    trial = np.repeat(np.arange(sc.K), sizes)

    trt = np.zeros(n, dtype=np.int64)
    rmdq0 = np.empty(n)
    age = np.empty(n)
    male = np.zeros(n, dtype=bool)
    g_trt, g_rmdq, g_age, g_sex = (stream(seed, c) for c in ("trt", "rmdq0", "age", "sex"))
    start = 0
    for k, nk in enumerate(sizes):
        sl = slice(start, start + nk)
        arm = np.zeros(nk, dtype=np.int64)
        arm[: int(round(sc.allocation_fractions[k] * nk))] = 1
        trt[sl] = g_trt.permutation(arm)
        rmdq0[sl] = _rounded_normal(g_rmdq, nk, *sc.rmdq0_dist[k], RMDQ_MIN, RMDQ_MAX)
        age[sl] = _rounded_normal(g_age, nk, *sc.age_dist[k], AGE_MIN, AGE_MAX)
        male[sl] = g_sex.random(nk) < sc.male_prob[k]
        start += nk

    if sc.trial_treatment_effects is not None:
        trial_effects = np.asarray(sc.trial_treatment_effects, dtype=float)
    else:
        trial_effects = sc.mean_treatment_effect + sc.tau1 * stream(seed, "trial_effects").standard_normal(sc.K)

    effect = trial_effects[trial].copy()
    inside = np.zeros(n, dtype=bool)
    if sc.subgroup_rule is not None:
        rule = sc.subgroup_rule
        z = {"rmdq0": rmdq0, "age": age, "sex": male.astype(float)}[rule.variable]
        inside = rule.inside(z)
        effect += np.where(inside, rule.inside_effect, rule.outside_effect)

    noise = stream(seed, "y").standard_normal(n) * sc.error_sd
    intercepts = np.asarray(sc.trial_intercepts, dtype=float)
    y = intercepts[trial] + sc.slope * rmdq0 + effect * trt + noise

    raw: dict[str, list] = {
        "y": y.tolist(),
        "trt": trt.tolist(),
        "trial": [str(k + 1) for k in trial],
        "rmdq0": rmdq0.tolist(),
        "age": age.tolist(),
        "sex": np.where(male, "M", "F").tolist(),
    }
    for col, count in sc.missing:
        if col not in raw:
            raise ValueError(f"cannot blank unknown column {col!r}")
        rows = stream(seed, "missing:" + col).choice(n, size=int(count), replace=False)
        for i in sorted(rows.tolist()):
            raw[col][i] = None

    ds = from_columns(raw, default_schema())
    truth = GroundTruth(sc, tuple(float(v) for v in trial_effects), effect, inside)
    return Simulation(raw=raw, dataset=ds, truth=truth)


def scenario_library() -> dict[str, GenScenario]:
    """Named scenarios used by the demos and the Monte-Carlo test suites."""
    t1 = dict(
        rmdq0_dist=TABLE1_RMDQ0, age_dist=TABLE1_AGE, male_prob=TABLE1_MALE,
    )
    planted = SubgroupRule("rmdq0", 9.0, -2.0, 0.0)
    one_trial = dict(
        rmdq0_dist=(TABLE1_RMDQ0[0],), age_dist=(TABLE1_AGE[0],), male_prob=(TABLE1_MALE[0],),
    )
    return {
        "table1": GenScenario(
            name="table1",
            trial_sizes=TABLE1_SIZES,
            allocation_fractions=TABLE1_ALLOCATION,
            trial_intercepts=TABLE1_INTERCEPTS,
            trial_treatment_effects=(-1.1,) * 4,
            missing=(("rmdq0", 11), ("y", 25)),
            **t1,
        ),
        "planted-threshold": GenScenario(
            name="planted-threshold",
            trial_sizes=(1500,),
            allocation_fractions=(0.5,),
            trial_intercepts=(4.0,),
            trial_treatment_effects=(0.0,),
            subgroup_rule=planted,
            slope=0.0,
            **one_trial,
        ),
        "intercept-shift": GenScenario(
            name="intercept-shift",
            trial_sizes=(375,) * 4,
            allocation_fractions=(0.5,) * 4,
            trial_intercepts=(8.0, 0.0, 8.0, 0.0),
            trial_treatment_effects=(0.0,) * 4,
            subgroup_rule=planted,
            slope=0.0,
            rmdq0_dist=(TABLE1_RMDQ0[0],) * 4,
            age_dist=(TABLE1_AGE[0],) * 4,
            male_prob=(0.7, 0.3, 0.7, 0.3),
        ),
        "trt-heterogeneity": GenScenario(
            # balanced trials with well-separated baseline RMDQ, so trial-level effect
            # variation is visible to a splitter that correlates with trial
            name="trt-heterogeneity",
            trial_sizes=(387,) * 4,
            allocation_fractions=(0.5,) * 4,
            trial_intercepts=(0.0,) * 4,
            mean_treatment_effect=-1.1,
            tau1=1.0,
            slope=0.0,
            error_sd=2.0,
            rmdq0_dist=((6.0, 2.5), (10.0, 2.5), (14.0, 2.5), (18.0, 2.5)),
            age_dist=(TABLE1_AGE[0],) * 4,
            male_prob=(0.5,) * 4,
        ),
        "confounded-allocation": GenScenario(
            name="confounded-allocation",
            trial_sizes=TABLE1_SIZES,
            allocation_fractions=TABLE1_ALLOCATION,
            trial_intercepts=CONFOUNDED_INTERCEPTS,
            trial_treatment_effects=(-1.1,) * 4,
            **t1,
        ),
        "null": GenScenario(
            name="null",
            trial_sizes=(250, 250),
            allocation_fractions=(0.5, 0.5),
            trial_intercepts=(4.0, 4.0),
            trial_treatment_effects=(0.0, 0.0),
            slope=0.0,
            rmdq0_dist=TABLE1_RMDQ0[:2],
            age_dist=TABLE1_AGE[:2],
            male_prob=TABLE1_MALE[:2],
        ),
    }


_TUPLE_FIELDS = {
    "trial_sizes": int, "allocation_fractions": float, "trial_intercepts": float,
    "trial_treatment_effects": float, "male_prob": float,
}
_PAIR_FIELDS = ("rmdq0_dist", "age_dist")
_SCALAR_FIELDS = {"mean_treatment_effect": float, "tau1": float, "slope": float, "error_sd": float, "seed": int}


def parse_scenario_text(text: str) -> tuple[GenScenario, dict[str, str]]:
    """Parse a flat ``key = value`` scenario file.

    ``base`` names a library scenario to start from (default ``table1``);
    every other key overrides one field. Lists are comma separated, pairs
    (``rmdq0_dist``, ``age_dist``) are ``mean:sd`` items, the subgroup rule
    is ``variable>threshold:inside:outside`` or ``none`` and ``missing`` is
    ``column:count`` items. Returns the scenario and the raw overrides.
    """
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    cp.optionxform = str
    cp.read_string("[scenario]\n" + text)
    items = dict(cp["scenario"])
    base_name = items.pop("base", "table1")
    lib = scenario_library()
    if base_name not in lib:
        raise KeyError(f"unknown base scenario {base_name!r}")
    updates: dict[str, Any] = {}
    for key, val in items.items():
        val = val.strip()
        if key == "name":
            updates[key] = val
        elif key in _TUPLE_FIELDS:
            updates[key] = None if val.lower() == "none" else tuple(_TUPLE_FIELDS[key](v) for v in val.split(","))
        elif key in _PAIR_FIELDS:
            updates[key] = tuple(tuple(float(x) for x in v.split(":")) for v in val.split(","))
        elif key in _SCALAR_FIELDS:
            updates[key] = _SCALAR_FIELDS[key](val)
        elif key == "subgroup_rule":
            if val.lower() == "none":
                updates[key] = None
            else:
                head, inside, outside = val.split(":")
                var, thr = head.split(">")
                updates[key] = SubgroupRule(var.strip(), float(thr), float(inside), float(outside))
        elif key == "missing":
            updates[key] = tuple((c.split(":")[0].strip(), int(c.split(":")[1])) for c in val.split(",") if c.strip())
        else:
            raise KeyError(f"unknown scenario key {key!r}")
    return dataclasses.replace(lib[base_name], **updates), {"base": base_name, **items}


def truth_json(truth: GroundTruth) -> str:
    return json.dumps(truth.to_dict(), indent=2, sort_keys=True)


def with_seed(scenario: GenScenario, seed: int) -> GenScenario:
    return dataclasses.replace(scenario, seed=int(seed))


def library_names() -> tuple[str, ...]:
    return tuple(scenario_library())

