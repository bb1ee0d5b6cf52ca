"""Participant-level data pooled from several trials.

A :class:`Dataset` is an immutable columnar table with three reserved roles
(outcome, binary treatment, trial id) plus any number of candidate splitting
covariates. Rows missing a reserved field are dropped at construction and
counted; rows missing a splitter value are kept.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import EmptyAfterFiltering, MissingColumn, NonBinaryTreatment, SchemaError

OUTCOME = "outcome-numeric"
TREATMENT = "treatment-binary"
TRIAL = "trial-id"
NUMERIC = "splitter-numeric"
CATEGORICAL = "splitter-categorical"

KINDS = (OUTCOME, TREATMENT, TRIAL, NUMERIC, CATEGORICAL)
RESERVED = (OUTCOME, TREATMENT, TRIAL)
DEFAULT_NA = ("", "NA")

RMDQ_RANGE = (0.0, 24.0)


@dataclass(frozen=True)
class ColumnSpec:
    name: str
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(f"unknown column kind {self.kind!r} for {self.name!r}")

    @property
    def is_splitter(self) -> bool:
        return self.kind in (NUMERIC, CATEGORICAL)


def validate_schema(schema: Sequence[ColumnSpec]) -> tuple[ColumnSpec, ...]:
    schema = tuple(schema)
    for role in RESERVED:
        n = sum(c.kind == role for c in schema)
        if n != 1:
            raise SchemaError(f"schema needs exactly one {role} column, got {n}")
    names = [c.name for c in schema]
    dupes = sorted({n for n in names if names.count(n) > 1})
    if dupes:
        raise SchemaError(f"duplicate column names in schema: {dupes}")
    return schema


def parse_schema(text: str) -> tuple[ColumnSpec, ...]:
    """Parse ``"y=outcome,trt=treatment,trial=trial,age=numeric,sex=categorical"``.

    Short role names are accepted alongside the full kind strings.
    """
    aliases = {
        "outcome": OUTCOME, "treatment": TREATMENT, "trial": TRIAL,
        "numeric": NUMERIC, "categorical": CATEGORICAL,
    }
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise SchemaError(f"schema entry {item!r} is not of the form name=role")
        name, role = (s.strip() for s in item.split("=", 1))
        out.append(ColumnSpec(name, aliases.get(role, role)))
    return validate_schema(out)


def default_schema() -> tuple[ColumnSpec, ...]:
    """Column layout written by the synthetic generator."""
    return (
        ColumnSpec("y", OUTCOME),
        ColumnSpec("trt", TREATMENT),
        ColumnSpec("trial", TRIAL),
        ColumnSpec("rmdq0", NUMERIC),
        ColumnSpec("age", NUMERIC),
        ColumnSpec("sex", CATEGORICAL),
    )


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Dataset:
    """Immutable participant table.

    ``trial`` holds 0-based codes into ``trial_levels`` (trial k = code + 1).
    Numeric splitters are float arrays with NaN for missing; categorical
    splitters are int codes into ``levels[name]`` with -1 for missing.
    ``row_ids`` are positions in the source table, so nested subsets compose.
    """

    schema: tuple[ColumnSpec, ...]
    y: np.ndarray
    treatment: np.ndarray
    trial: np.ndarray
    trial_levels: tuple[str, ...]
    splitters: Mapping[str, np.ndarray]
    levels: Mapping[str, tuple[str, ...]]
    row_ids: np.ndarray
    dropped_row_report: Mapping[str, int] = field(default_factory=dict)
    n_raw: int = 0
    outcome_out_of_range: int = 0

    @property
    def n(self) -> int:
        return int(self.y.shape[0])

    @property
    def K(self) -> int:
        return len(self.trial_levels)

    def column(self, role: str) -> ColumnSpec:
        return next(c for c in self.schema if c.kind == role)

    @property
    def outcome_name(self) -> str:
        return self.column(OUTCOME).name

    @property
    def treatment_name(self) -> str:
        return self.column(TREATMENT).name

    @property
    def trial_name(self) -> str:
        return self.column(TRIAL).name

    @property
    def splitter_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.schema if c.is_splitter)

    def kind_of(self, name: str) -> str:
        for c in self.schema:
            if c.name == name:
                return c.kind
        raise MissingColumn(name)

    def trial_counts(self) -> np.ndarray:
        return np.bincount(self.trial, minlength=self.K)

    @property
    def empty_trials(self) -> tuple[str, ...]:
        """Trial levels with no rows in this (sub)set."""
        counts = self.trial_counts()
        return tuple(lvl for lvl, c in zip(self.trial_levels, counts) if c == 0)

    def splitter_missing(self, name: str) -> np.ndarray:
        z = self.splitters[name]
        if self.kind_of(name) == NUMERIC:
            return np.isnan(z)
        return z < 0

    def canonical_bytes(self) -> bytes:
        """Deterministic serialization used for equality and fingerprints."""
        buf = io.StringIO()
        buf.write(repr([(c.name, c.kind) for c in self.schema]) + "\n")
        buf.write(repr(self.trial_levels) + "\n")
        buf.write(repr(sorted((k, tuple(v)) for k, v in self.levels.items())) + "\n")
        buf.write(repr(sorted(self.dropped_row_report.items())) + "\n")
        buf.write(f"{self.n_raw} {self.outcome_out_of_range}\n")
        h = hashlib.sha256(buf.getvalue().encode())
        for arr in (self.row_ids, self.y, self.treatment, self.trial):
            h.update(np.ascontiguousarray(arr).tobytes())
        for name in self.splitter_names:
            h.update(name.encode())
            h.update(np.ascontiguousarray(self.splitters[name]).tobytes())
        return h.digest()

    def fingerprint(self) -> str:
        return self.canonical_bytes().hex()

    def equals(self, other: "Dataset") -> bool:
        return self.canonical_bytes() == other.canonical_bytes()

    def to_columns(self) -> dict[str, list]:
        """Decode back to per-column python values (None for missing)."""
        out: dict[str, list] = {}
        for c in self.schema:
            if c.kind == OUTCOME:
                out[c.name] = self.y.tolist()
            elif c.kind == TREATMENT:
                out[c.name] = self.treatment.tolist()
            elif c.kind == TRIAL:
                out[c.name] = [self.trial_levels[k] for k in self.trial]
            elif c.kind == NUMERIC:
                out[c.name] = [None if math.isnan(v) else v for v in self.splitters[c.name].tolist()]
            else:
                lv = self.levels[c.name]
                out[c.name] = [None if k < 0 else lv[k] for k in self.splitters[c.name].tolist()]
        return out


def _is_missing(v, na: frozenset) -> bool:
    if v is None:
        return True
    if isinstance(v, str):
        return v.strip() in na
    if isinstance(v, (float, np.floating)):
        return math.isnan(v)
    return False


def _as_float(v, col: str) -> float:
    try:
        return float(v)
    except (TypeError, ValueError):
        raise SchemaError(f"column {col!r}: cannot parse {v!r} as a number") from None


def _as_label(v) -> str:
    if isinstance(v, str):
        return v.strip()
    if isinstance(v, (float, np.floating)) and float(v).is_integer():
        return str(int(v))
    return str(v)


def from_columns(
    columns: Mapping[str, Sequence],
    schema: Sequence[ColumnSpec],
    na_markers: Iterable[str] = DEFAULT_NA,
    treatment_codes: tuple[str, str] = ("0", "1"),
) -> Dataset:
    """Build a :class:`Dataset` from raw per-column values.

    Values may be strings (as read from CSV) or python/numpy scalars.
    Rows missing the outcome, treatment or trial id are dropped and counted
    per column in ``dropped_row_report``; categorical levels are recorded in
    first-seen order over the kept rows.
    """
    schema = validate_schema(schema)
    na = frozenset(na_markers)
    for c in schema:
        if c.name not in columns:
            raise MissingColumn(f"column {c.name!r} not found in input")
    lengths = {len(columns[c.name]) for c in schema}
    if len(lengths) != 1:
        raise SchemaError("columns have unequal lengths")
    n_raw = lengths.pop()

    reserved = [c for c in schema if c.kind in RESERVED]
    miss = {c.name: np.array([_is_missing(v, na) for v in columns[c.name]], dtype=bool) for c in reserved}
    report = {name: int(m.sum()) for name, m in miss.items() if m.any()}
    keep = ~np.logical_or.reduce([m for m in miss.values()]) if miss else np.ones(n_raw, bool)
    idx = np.flatnonzero(keep)
    if idx.size == 0:
        raise EmptyAfterFiltering(f"all {n_raw} rows dropped for missing outcome/treatment/trial")

    ycol = next(c for c in schema if c.kind == OUTCOME).name
    y = np.array([_as_float(columns[ycol][i], ycol) for i in idx], dtype=float)
    if not np.all(np.isfinite(y)):
        raise SchemaError(f"outcome column {ycol!r} has non-finite values")

    tcol = next(c for c in schema if c.kind == TREATMENT).name
    codes = {treatment_codes[0]: 0, treatment_codes[1]: 1}
    trt = np.empty(idx.size, dtype=np.int8)
    for j, i in enumerate(idx):
        v = columns[tcol][i]
        lab = _as_label(v)
        if lab in codes:
            trt[j] = codes[lab]
            continue
        try:
            f = float(v)
        except (TypeError, ValueError):
            f = math.nan
        if f in (0.0, 1.0):
            trt[j] = int(f)
        else:
            raise NonBinaryTreatment(f"treatment column {tcol!r} has value {v!r} outside {{0, 1}}")

    kcol = next(c for c in schema if c.kind == TRIAL).name
    trial_levels: list[str] = []
    lookup: dict[str, int] = {}
    trial = np.empty(idx.size, dtype=np.int64)
    for j, i in enumerate(idx):
        lab = _as_label(columns[kcol][i])
        if lab not in lookup:
            lookup[lab] = len(trial_levels)
            trial_levels.append(lab)
        trial[j] = lookup[lab]

    splitters: dict[str, np.ndarray] = {}
    levels: dict[str, tuple[str, ...]] = {}
    for c in schema:
        raw = columns[c.name]
        if c.kind == NUMERIC:
            z = np.array([math.nan if _is_missing(raw[i], na) else _as_float(raw[i], c.name) for i in idx])
            splitters[c.name] = _readonly(z.astype(float))
        elif c.kind == CATEGORICAL:
            lv: list[str] = []
            lk: dict[str, int] = {}
            z = np.empty(idx.size, dtype=np.int64)
            for j, i in enumerate(idx):
                if _is_missing(raw[i], na):
                    z[j] = -1
                    continue
                lab = _as_label(raw[i])
                if lab not in lk:
                    lk[lab] = len(lv)
                    lv.append(lab)
                z[j] = lk[lab]
            splitters[c.name] = _readonly(z)
            levels[c.name] = tuple(lv)

    lo, hi = RMDQ_RANGE
    out_of_range = int(np.sum((y < lo) | (y > hi)))
    return Dataset(
        schema=schema,
        y=_readonly(y),
        treatment=_readonly(trt),
        trial=_readonly(trial),
        trial_levels=tuple(trial_levels),
        splitters=splitters,
        levels=levels,
        row_ids=_readonly(idx.astype(np.int64)),
        dropped_row_report=report,
        n_raw=n_raw,
        outcome_out_of_range=out_of_range,
    )


def read_table(path: str | Path, delimiter: str = ",") -> dict[str, list[str]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh, delimiter=delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyAfterFiltering(f"{path} is empty") from None
        header = [h.strip() for h in header]
        cols: dict[str, list[str]] = {h: [] for h in header}
        for row in reader:
            if not row:
                continue
            for h, v in zip(header, row):
                cols[h].append(v)
            for h in header[len(row):]:
                cols[h].append("")
    return cols


def ingest_csv(
    path: str | Path,
    schema: Sequence[ColumnSpec],
    delimiter: str = ",",
    na_markers: Iterable[str] = DEFAULT_NA,
    treatment_codes: tuple[str, str] = ("0", "1"),
) -> Dataset:
    cols = read_table(path, delimiter)
    return from_columns(cols, schema, na_markers=na_markers, treatment_codes=treatment_codes)


def _fmt(v) -> str:
    if v is None:
        return "NA"
    if isinstance(v, float):
        if math.isnan(v):
            return "NA"
        return repr(float(v))
    return str(v)


def write_csv(columns: Mapping[str, Sequence], path: str | Path | io.TextIOBase, order: Sequence[str] | None = None) -> None:
    """Write raw columns to CSV. Floats use ``repr`` so they round-trip exactly."""
    names = list(order) if order is not None else list(columns)
    n = len(columns[names[0]]) if names else 0
    own = not hasattr(path, "write")
    fh = open(path, "w", newline="") if own else path
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(names)
        for i in range(n):
            w.writerow([_fmt(columns[c][i]) for c in names])
    finally:
        if own:
            fh.close()


def subset(ds: Dataset, mask) -> Dataset:
    """Rows ``mask`` (boolean mask or index array) of ``ds``.

    Schema, trial levels and categorical levels are carried over verbatim;
    an empty selection yields an ``n == 0`` dataset rather than an error.
    """
    mask = np.asarray(mask)
    if mask.dtype == bool:
        if mask.shape != (ds.n,):
            raise IndexError("boolean mask length does not match dataset")
        idx = np.flatnonzero(mask)
    else:
        idx = mask.astype(np.int64).ravel()
        if idx.size and (idx.min() < -ds.n or idx.max() >= ds.n):
            raise IndexError("row index out of range")
    return Dataset(
        schema=ds.schema,
        y=_readonly(ds.y[idx]),
        treatment=_readonly(ds.treatment[idx]),
        trial=_readonly(ds.trial[idx]),
        trial_levels=ds.trial_levels,
        splitters={k: _readonly(v[idx]) for k, v in ds.splitters.items()},
        levels=ds.levels,
        row_ids=_readonly(ds.row_ids[idx]),
        dropped_row_report=ds.dropped_row_report,
        n_raw=ds.n_raw,
        outcome_out_of_range=ds.outcome_out_of_range,
    )
