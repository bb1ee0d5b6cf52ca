"""Command-line interface.

    mobipd simulate --scenario table1 --seed 1 --out run/
    mobipd fit --input run/data.csv --method MOB --method metaMOB-SI --out run/fit
    mobipd pooled --input run/data.csv --out run/pooled
    mobipd replicate --scenario intercept-shift --method MOB --method MOB-RI --n-seeds 100 --out run/rep

Exit codes: 0 success, 1 model or data error, 2 configuration error. Errors
are written to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .dataset import Dataset, default_schema, ingest_csv, parse_schema, write_csv
from .errors import ConfigError, MobError, SchemaError
from .glmmtree import AlternationControl
from .methods import (
    METHODS,
    MethodResult,
    method_spec,
    pooled_lm,
    pooled_lm_trial_adjusted,
    pooled_lmm_random_treatment,
    run_method,
)
from .mobtree import NUMERIC, GrowControl, Split, Tree, TreeNode
from .synthgen import generate, parse_scenario_text, scenario_library

FORMATS = ("text", "json", "dot", "csv-report")
DEFAULT_FORMATS = "json,csv-report"
# config keys that cannot change any artifact and are left out of the config hash
UNHASHED = ("out", "threads")


def _clean(obj):
    """JSON-safe copy: NaN/inf become null, numpy scalars become Python."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _dumps(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=True, indent=1, allow_nan=False) + "\n"


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


class _Writer:
    def __init__(self, out: Path):
        self.out = out
        out.mkdir(parents=True, exist_ok=True)
        self.artifacts: dict[str, str] = {}

    def text(self, name: str, content: str):
        p = self.out / name
        p.write_text(content)
        self.artifacts[name] = _sha256(p)

    def csv(self, name: str, rows: list[dict]):
        p = self.out / name
        names: list[str] = []
        for r in rows:
            names += [k for k in r if k not in names]
        write_csv({k: [r.get(k) for r in rows] for k in names}, p, order=names)
        self.artifacts[name] = _sha256(p)


def _fmt(v: float, spec: str = ".4g") -> str:
    return "NA" if v is None or not math.isfinite(v) else format(v, spec)


def _edge_labels(split: Split) -> tuple[str, str]:
    if split.kind == NUMERIC:
        return f"<= {split.threshold:g}", f"> {split.threshold:g}"
    levels = ", ".join(split.left_levels)
    return f"in {{{levels}}}", f"not in {{{levels}}}"


def render_text(result: MethodResult) -> str:
    tree = result.tree
    leaves = {r.leaf_id: r for r in result.leaves}
    lines = [f"{result.spec.name}: {tree.n_leaves} leaves, n = {tree.n_obs}"]

    def leaf_text(node: TreeNode) -> str:
        r = leaves[node.id]
        if r.effect is None:
            eff = r.error or "effect not estimable"
        else:
            eff = f"effect {_fmt(r.effect.estimate)} (SE {_fmt(r.effect.std_error)}, p {_fmt(r.effect.p_value, '.3g')})"
        flag = f" [few from trial {', '.join(r.underrepresented)}]" if r.underrepresented else ""
        return f"n = {r.n}, {eff}{flag}"

    def walk(node: TreeNode, prefix: str, label: str):
        head = f"{prefix}[{node.id}] {label}".rstrip()
        if node.is_leaf:
            lines.append(f"{head}: {leaf_text(node)}")
            return
        lines.append(head)
        left, right = _edge_labels(node.split)
        var = node.split.variable
        walk(node.children[0], prefix + "|   ", f"{var} {left}")
        walk(node.children[1], prefix + "|   ", f"{var} {right}")

    walk(tree.root, "", "root")
    for k, v in result.variance_components.items():
        lines.append(f"{k} = {_fmt(v, '.6g')}")
    return "\n".join(lines) + "\n"


def render_dot(result: MethodResult) -> str:
    tree = result.tree
    leaves = {r.leaf_id: r for r in result.leaves}
    out = [f'digraph "{result.spec.name}" {{', '  node [fontname="Helvetica"];']
    for node in tree.nodes():
        if node.is_leaf:
            r = leaves[node.id]
            eff = "effect NA" if r.effect is None else \
                f"effect {_fmt(r.effect.estimate)} (SE {_fmt(r.effect.std_error)})"
            label = (f"Node {node.id} (n = {r.n})\\ncontrol: n = {r.n_control}, mean {_fmt(r.mean_control)}"
                     f"\\ntreated: n = {r.n_treated}, mean {_fmt(r.mean_treated)}\\n{eff}")
            out.append(f'  n{node.id} [shape=box, label="{label}"];')
        else:
            p = node.selected.adjusted_p
            out.append(f'  n{node.id} [shape=ellipse, label="{node.id}: {node.split.variable}\\np = {_fmt(p, ".3g")}"];')
    for node in tree.nodes():
        if not node.is_leaf:
            for child, lab in zip(node.children, _edge_labels(node.split)):
                out.append(f'  n{node.id} -> n{child.id} [label="{lab}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def result_document(result: MethodResult) -> dict:
    g = result.glmm
    return {
        "schema_version": 1,
        "method": result.spec.name,
        "tree": result.tree.to_dict(include_method=False),
        "leaves": [r.as_row() for r in result.leaves],
        "variance_components": result.variance_components,
        "alternation": None if g is None else {
            "iterations": g.iterations_used, "converged": g.converged, "stop_reason": g.stop_reason,
            "objective_log": g.per_iteration_log, "dropped_columns": list(g.dropped_columns),
        },
    }


def _formats(text: str) -> tuple[str, ...]:
    fmts = tuple(f.strip() for f in text.split(",") if f.strip())
    if not fmts:
        raise ConfigError("--format needs at least one format")
    bad = [f for f in fmts if f not in FORMATS]
    if bad:
        raise ConfigError(f"unknown format(s) {bad}; choose from {', '.join(FORMATS)}")
    return fmts


def _scenario(args):
    """(scenario, overrides) from --scenario / --scenario-file, or (None, None)."""
    if getattr(args, "scenario_file", None):
        try:
            text = Path(args.scenario_file).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read scenario file: {exc}") from None
        try:
            sc, overrides = parse_scenario_text(text)
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"invalid scenario file: {exc}") from None
        return sc, overrides
    if getattr(args, "scenario", None):
        lib = scenario_library()
        if args.scenario not in lib:
            raise ConfigError(f"unknown scenario {args.scenario!r}; choose from {', '.join(lib)}")
        return lib[args.scenario], {}
    return None, None


def _load_data(args, config: dict) -> Dataset:
    try:
        schema = parse_schema(args.schema) if args.schema else default_schema()
    except SchemaError as exc:
        raise ConfigError(f"invalid --schema: {exc}") from None
    config["schema"] = [f"{c.name}={c.kind}" for c in schema]
    if args.input:
        if args.scenario or args.scenario_file:
            raise ConfigError("use either --input or a scenario, not both")
        try:
            ds = ingest_csv(args.input, schema)
        except OSError as exc:
            raise ConfigError(f"cannot read input: {exc}") from None
        config["input"] = str(args.input)
    else:
        sc, overrides = _scenario(args)
        if sc is None:
            raise ConfigError("give --input or --scenario/--scenario-file")
        sc = dataclasses.replace(sc, seed=args.seed)
        config["scenario"] = sc.name
        config["scenario_overrides"] = overrides
        config["seed"] = args.seed
        ds = generate(sc).dataset
    config["input_fingerprint"] = ds.fingerprint()
    config["n_obs"] = ds.n
    config["dropped_rows"] = ds.dropped_row_report
    return ds


def _controls(args, config: dict) -> tuple[GrowControl, AlternationControl]:
    try:
        gc = GrowControl(alpha=args.alpha, min_node_size=args.min_node_size, max_depth=args.max_depth,
                         trim=args.trim, threads=args.threads)
        ac = AlternationControl(max_iterations=args.max_iter)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    config["grow_control"] = gc.to_dict()
    config["alternation_control"] = ac.to_dict()
    config["threads"] = args.threads
    return gc, ac


def _methods(args) -> list[str]:
    names = args.method or ["MOB"]
    for m in names:
        method_spec(m)
    return list(dict.fromkeys(names))


def _manifest(w: _Writer, command: str, config: dict, timings: dict, extra: dict | None = None):
    hashed = {k: v for k, v in config.items() if k not in UNHASHED}
    doc = {
        "tool": "mobipd",
        "version": __version__,
        "command": command,
        "config": config,
        "config_hash": hashlib.sha256(_dumps(hashed).encode()).hexdigest(),
        "artifacts": dict(sorted(w.artifacts.items())),
        "timings_seconds": timings,
    }
    if extra:
        doc.update(extra)
    p = w.out / "manifest.json"
    p.write_text(_dumps(doc))


def cmd_fit(args) -> int:
    config: dict[str, Any] = {"command": "fit", "out": str(args.out)}
    fmts = _formats(args.format)
    config["formats"] = list(fmts)
    methods = _methods(args)
    config["methods"] = methods
    ds = _load_data(args, config)
    gc, ac = _controls(args, config)
    w = _Writer(Path(args.out))
    timings = {}
    for name in methods:
        res = run_method(ds, name, grow_control=gc, alt_control=ac)
        timings[name] = round(res.runtime_seconds, 6)
        if "json" in fmts:
            w.text(f"{name}.json", _dumps(result_document(res)))
        if "csv-report" in fmts:
            w.csv(f"{name}_leaves.csv", [r.as_row() for r in res.leaves])
        if "text" in fmts:
            w.text(f"{name}.txt", render_text(res))
        if "dot" in fmts:
            w.text(f"{name}.dot", render_dot(res))
        if args.verbose:
            sys.stderr.write(render_text(res))
    _manifest(w, "fit", config, timings)
    return 0


def cmd_simulate(args) -> int:
    config: dict[str, Any] = {"command": "simulate", "out": str(args.out), "seed": args.seed}
    sc, overrides = _scenario(args)
    if sc is None:
        raise ConfigError("simulate needs --scenario or --scenario-file")
    sc = dataclasses.replace(sc, seed=args.seed)
    config["scenario"] = sc.name
    config["scenario_overrides"] = overrides
    config["scenario_parameters"] = sc.to_dict()
    t0 = time.perf_counter()
    sim = generate(sc)
    w = _Writer(Path(args.out))
    order = [c.name for c in sim.dataset.schema]
    p = w.out / "data.csv"
    write_csv(sim.raw, p, order=order)
    w.artifacts["data.csv"] = _sha256(p)
    w.text("truth.json", _dumps(sim.truth.to_dict()))
    _manifest(w, "simulate", config, {"generate": round(time.perf_counter() - t0, 6)},
              {"n_rows": len(sim.raw[order[0]])})
    return 0


def cmd_pooled(args) -> int:
    config: dict[str, Any] = {"command": "pooled", "out": str(args.out)}
    ds = _load_data(args, config)
    config["baseline"] = args.baseline
    w = _Writer(Path(args.out))
    doc, rows, timings = {}, [], {}
    for label, fn in (("unadjusted", lambda: pooled_lm(ds, True, args.baseline)),
                      ("trial-adjusted", lambda: pooled_lm_trial_adjusted(ds, args.baseline)),
                      ("random-treatment", lambda: pooled_lmm_random_treatment(ds, args.baseline))):
        t0 = time.perf_counter()
        if label != "unadjusted" and ds.K < 2:
            doc[label] = {"skipped": "needs at least two trials"}
            continue
        res = fn()
        timings[label] = round(time.perf_counter() - t0, 6)
        doc[label] = {"n_obs": res.n_obs, "terms": res.rows(), "variance_components": res.variance_components}
        rows += [{"model": label, **r} for r in res.rows()]
    w.text("pooled.json", _dumps(doc))
    w.csv("pooled.csv", rows)
    _manifest(w, "pooled", config, timings)
    return 0


def _replicate_one(sc, seed: int, methods, gc, ac) -> list[dict]:
    rows = []
    try:
        sim = generate(dataclasses.replace(sc, seed=seed))
    except MobError as exc:
        return [{"seed": seed, "method": m, "status": "error", "error": f"{type(exc).__name__}: {exc}"} for m in methods]
    rule = sc.subgroup_rule
    for m in methods:
        row: dict[str, Any] = {"seed": seed, "method": m}
        t0 = time.perf_counter()
        try:
            res = run_method(sim.dataset, m, grow_control=gc, alt_control=ac)
        except MobError as exc:
            row.update(status="error", error=f"{type(exc).__name__}: {exc}")
            rows.append(row)
            continue
        split = res.tree.root.split
        row.update(
            status="ok", error="", n_leaves=res.n_leaves,
            root_variable=split.variable if split else "",
            root_threshold=split.threshold if split is not None and split.kind == NUMERIC else None,
            root_levels=";".join(split.left_levels) if split is not None and split.kind != NUMERIC else "",
            recovered=None if rule is None else bool(split is not None and split.variable == rule.variable),
            tau0_sq=res.variance_components.get("tau0_sq"),
            tau1_sq=res.variance_components.get("tau1_sq"),
            leaf_effects=";".join(
                f"{r.leaf_id}:{'NA' if r.effect is None else repr(r.effect.estimate)}" for r in res.leaves),
            runtime_seconds=round(time.perf_counter() - t0, 6),
        )
        rows.append(row)
    return rows


def replicate_summary(rows: list[dict], methods) -> dict:
    out = {}
    for m in methods:
        mine = [r for r in rows if r["method"] == m]
        ok = [r for r in mine if r["status"] == "ok"]
        s: dict[str, Any] = {"n_runs": len(mine), "n_ok": len(ok), "n_failed": len(mine) - len(ok)}
        if ok:
            s["mean_leaves"] = float(np.mean([r["n_leaves"] for r in ok]))
            s["root_split_rate"] = float(np.mean([r["root_variable"] != "" for r in ok]))
            rec = [r["recovered"] for r in ok if r["recovered"] is not None]
            s["recovery_rate"] = float(np.mean(rec)) if rec else None
            for k in ("tau0_sq", "tau1_sq"):
                vals = [r[k] for r in ok if r.get(k) is not None]
                if vals:
                    s[f"median_{k}"] = float(np.median(vals))
                    s[f"zero_rate_{k}"] = float(np.mean([v == 0.0 for v in vals]))
        out[m] = s
    return out


def cmd_replicate(args) -> int:
    config: dict[str, Any] = {"command": "replicate", "out": str(args.out)}
    sc, overrides = _scenario(args)
    if sc is None:
        raise ConfigError("replicate needs --scenario or --scenario-file")
    if args.n_seeds < 1:
        raise ConfigError("--n-seeds must be >= 1")
    methods = _methods(args)
    config.update(scenario=sc.name, scenario_overrides=overrides, methods=methods, first_seed=args.seed,
                  n_seeds=args.n_seeds)
    gc, ac = _controls(args, config)
    # trees are grown single-threaded here; the worker pool runs seeds instead
    gc = dataclasses.replace(gc, threads=1)
    seeds = range(args.seed, args.seed + args.n_seeds)
    t0 = time.perf_counter()
    if args.threads > 1:
        with ThreadPoolExecutor(args.threads) as pool:
            chunks = list(pool.map(lambda s: _replicate_one(sc, s, methods, gc, ac), seeds))
    else:
        chunks = [_replicate_one(sc, s, methods, gc, ac) for s in seeds]
    rows = [r for c in chunks for r in c]
    w = _Writer(Path(args.out))
    w.csv("replicate.csv", rows)
    summary = replicate_summary(rows, methods)
    w.text("summary.json", _dumps(summary))
    _manifest(w, "replicate", config, {"total": round(time.perf_counter() - t0, 6)})
    if args.verbose:
        sys.stderr.write(_dumps(summary))
    return 0


def _add_data_args(p: argparse.ArgumentParser):
    p.add_argument("--input", help="CSV file with one row per participant")
    p.add_argument("--schema", help="column roles, e.g. 'y=outcome-numeric,trt=treatment-binary,...'")
    p.add_argument("--scenario", help="generate data from a library scenario instead of --input")
    p.add_argument("--scenario-file", help="flat key = value scenario file")
    p.add_argument("--seed", type=int, default=1, help="generator seed (default 1)")


def _add_tree_args(p: argparse.ArgumentParser):
    p.add_argument("--method", action="append", choices=list(METHODS),
                   help="method to run; repeat for several (default MOB)")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--min-node-size", type=int, default=None, help="default 10 x node-model parameters")
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--trim", type=float, default=0.1)
    p.add_argument("--max-iter", type=int, default=100, help="maximum alternation iterations")
    p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mobipd", description="Treatment-effect subgroup trees for multi-trial IPD.")
    ap.add_argument("--version", action="version", version=f"mobipd {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="grow trees with one or more methods")
    _add_data_args(fit)
    _add_tree_args(fit)
    fit.add_argument("--format", default=DEFAULT_FORMATS, help=f"comma list of {', '.join(FORMATS)}")
    fit.add_argument("--out", required=True)
    fit.add_argument("--verbose", action="store_true")
    fit.set_defaults(func=cmd_fit)

    sim = sub.add_parser("simulate", help="write a generated dataset and its ground truth")
    sim.add_argument("--scenario")
    sim.add_argument("--scenario-file")
    sim.add_argument("--seed", type=int, default=1)
    sim.add_argument("--out", required=True)
    sim.set_defaults(func=cmd_simulate)

    pooled = sub.add_parser("pooled", help="pooled linear and mixed models of treatment")
    _add_data_args(pooled)
    pooled.add_argument("--baseline", default="rmdq0", help="baseline covariate column")
    pooled.add_argument("--out", required=True)
    pooled.set_defaults(func=cmd_pooled)

    rep = sub.add_parser("replicate", help="Monte-Carlo runs over consecutive seeds")
    rep.add_argument("--scenario")
    rep.add_argument("--scenario-file")
    _add_tree_args(rep)
    rep.add_argument("--seed", type=int, default=1, help="first seed")
    rep.add_argument("--n-seeds", type=int, default=100)
    rep.add_argument("--out", required=True)
    rep.add_argument("--verbose", action="store_true")
    rep.set_defaults(func=cmd_replicate)
    return ap


def _fail(exc: Exception, code: int) -> int:
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        return _fail(exc, 2)
    except MobError as exc:
        return _fail(exc, 1)
    except (ValueError, np.linalg.LinAlgError) as exc:
        return _fail(exc, 1)


if __name__ == "__main__":
    raise SystemExit(main())
