import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mobipd.dataset import (
    CATEGORICAL,
    NUMERIC,
    ColumnSpec,
    default_schema,
    from_columns,
    ingest_csv,
    parse_schema,
    subset,
    write_csv,
)
from mobipd.errors import EmptyAfterFiltering, MissingColumn, NonBinaryTreatment, SchemaError


def small_columns():
    return {
        "y": ["1.5", "2", "NA", "4", "5"],
        "trt": ["0", "1", "1", "0", "1"],
        "trial": ["A", "A", "B", "B", ""],
        "rmdq0": ["3", "", "5", "7", "9"],
        "age": ["40", "50", "60", "NA", "30"],
        "sex": ["M", "F", "F", "", "M"],
    }


def test_drops_rows_missing_reserved_fields_and_counts_them():
    ds = from_columns(small_columns(), default_schema())
    assert ds.n == 3
    assert ds.n_raw == 5
    assert ds.dropped_row_report == {"y": 1, "trial": 1}
    assert ds.trial_levels == ("A", "B")
    assert np.isnan(ds.splitters["rmdq0"][1])
    assert ds.splitters["sex"][2] == -1


def test_categorical_levels_in_first_seen_order():
    ds = from_columns(small_columns(), default_schema())
    assert ds.levels["sex"] == ("M", "F")


def test_non_binary_treatment_rejected():
    cols = small_columns()
    cols["trt"][0] = "2"
    with pytest.raises(NonBinaryTreatment):
        from_columns(cols, default_schema())


def test_missing_column_reported():
    cols = small_columns()
    del cols["age"]
    with pytest.raises(MissingColumn):
        from_columns(cols, default_schema())


def test_all_rows_dropped():
    cols = small_columns()
    cols["y"] = ["NA"] * 5
    with pytest.raises(EmptyAfterFiltering):
        from_columns(cols, default_schema())


def test_schema_needs_each_reserved_role_once():
    with pytest.raises(SchemaError):
        parse_schema("y=outcome-numeric,trt=treatment-binary")
    with pytest.raises(SchemaError):
        parse_schema("y=outcome-numeric,trt=treatment-binary,k=trial-id,z=bogus")


def test_parse_schema_round_trip():
    text = "y=outcome-numeric,trt=treatment-binary,trial=trial-id,z=splitter-numeric,g=splitter-categorical"
    schema = parse_schema(text)
    assert [c.kind for c in schema][3:] == [NUMERIC, CATEGORICAL]
    assert schema[0] == ColumnSpec("y", "outcome-numeric")


def test_csv_round_trip_gives_equal_dataset(tmp_path):
    raw = small_columns()
    ds = from_columns(raw, default_schema())
    path = tmp_path / "d.csv"
    write_csv(raw, path)
    again = ingest_csv(path, default_schema())
    assert again.equals(ds)
    assert again.fingerprint() == ds.fingerprint()


def test_subset_keeps_levels_and_allows_empty():
    ds = from_columns(small_columns(), default_schema())
    sub = subset(ds, np.array([False, True, False]))
    assert sub.n == 1
    assert sub.trial_levels == ds.trial_levels
    assert sub.levels == ds.levels
    assert subset(ds, np.zeros(ds.n, bool)).n == 0


def test_outcome_outside_rmdq_scale_is_counted():
    cols = small_columns()
    cols["y"][0] = "30"
    ds = from_columns(cols, default_schema())
    assert ds.outcome_out_of_range == 1


finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(finite, st.integers(0, 1), st.sampled_from("abc"), st.one_of(st.none(), finite),
                          st.one_of(st.none(), finite), st.one_of(st.none(), st.sampled_from(["M", "F"]))),
                min_size=1, max_size=30))
def test_csv_round_trip_property(rows):
    names = ["y", "trt", "trial", "rmdq0", "age", "sex"]
    cols = {n: [r[i] for r in rows] for i, n in enumerate(names)}
    ds = from_columns(cols, default_schema())
    buf = io.StringIO()
    write_csv(ds.to_columns(), buf, order=names)
    lines = buf.getvalue().splitlines()
    header, body = lines[0].split(","), [ln.split(",") for ln in lines[1:]]
    back = from_columns({h: [b[i] for b in body] for i, h in enumerate(header)}, default_schema())
    assert back.equals(ds)
