import sys
import os
import io
import json
import math

import numpy as np
import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.core.types import CurveSample, IntegrationStatus
from src.output.svg import Figure, complex_points
from src.output.writers import (
    SCHEMA_VERSION,
    Table,
    build_document,
    csv_text,
    curve_table,
    document_text,
    format_float,
    read_csv,
    read_json,
    summarize,
    write_csv,
    write_json,
)


@pytest.fixture
def curve():
    t = np.array([0.0, 0.1, 0.25])
    states = np.array([[1.0, 2.0], [1.0 / 3.0, -2.5e-17], [math.pi, 1e300]])
    diagnostics = {"resid": np.array([0.0, -1e-12, math.nan])}
    return CurveSample(t, states, diagnostics, IntegrationStatus.EVENT, ("y", "p"))


def test_curve_table_layout(curve):
    table = curve_table(curve, index="x")
    assert table.columns == ["x", "y", "p", "resid"]
    assert table.rows[1][:3] == [0.1, 1.0 / 3.0, -2.5e-17]


def test_csv_is_plain_and_exact(curve):
    text = csv_text(curve_table(curve))
    assert text.startswith("t,y,p,resid\n")
    assert "\r" not in text
    assert "nan" in text
    back = read_csv(io.StringIO(text))
    assert back.rows[2][1] == math.pi
    assert back.rows[2][2] == 1e300


def test_csv_and_json_carry_identical_doubles(curve, tmp_path):
    table = curve_table(curve)
    write_csv(table, tmp_path / "run.csv")
    document = build_document("chain", table, curve.status.value, {"xmax": 3.0})
    write_json(document, tmp_path / "run.json")
    from_csv = read_csv(tmp_path / "run.csv").array()
    from_json = read_json(tmp_path / "run.json").table().array()
    assert np.array_equal(from_csv, from_json, equal_nan=True)


def test_json_document_fields(curve):
    table = curve_table(curve)
    summary = summarize(table, ["resid"])
    document = build_document("chain", table, "event", {"geometry": "flat"}, summary)
    data = json.loads(document_text(document))
    assert data["schema_version"] == SCHEMA_VERSION == "1"
    assert data["status"] == "event"
    assert data["summary"]["max_abs_resid"] == 1e-12
    assert data["config"] == {"geometry": "flat"}


def test_format_float():
    assert format_float(0.1) == "0.1"
    assert format_float(float("inf")) == "inf"
    assert format_float(float("nan")) == "nan"


def test_read_csv_empty():
    with pytest.raises(ValueError):
        read_csv(io.StringIO(""))


def test_svg_is_deterministic_and_escaped():
    def draw():
        figure = Figure(title="a < b & c")
        z = np.exp(1j * np.linspace(0.0, math.pi, 50))
        figure.polyline(complex_points(z))
        figure.whiskers(complex_points(z), np.linspace(0.0, math.pi, 50), length=0.2, every=10)
        return figure.render()

    first = draw()
    assert first == draw()
    assert first.startswith('<?xml version="1.0" encoding="UTF-8"?>')
    assert "<title>a &lt; b &amp; c</title>" in first
    assert first.count("<line ") == 5
    assert first.count("<polyline ") == 1
    assert first.endswith("</svg>\n")


def test_svg_drops_non_finite_points(tmp_path):
    figure = Figure()
    figure.polyline([[0.0, 0.0], [math.nan, 1.0], [1.0, 1.0]])
    figure.polyline([[0.0, 0.0]])
    figure.segment((0.0, 0.0), (math.inf, 1.0))
    assert len(figure.polylines) == 1
    assert len(figure.polylines[0][0]) == 2
    assert figure.segments == []
    figure.save(tmp_path / "out.svg")
    assert (tmp_path / "out.svg").read_text(encoding="utf-8") == figure.render()


def test_table_column():
    table = Table(columns=["a", "b"], rows=[[1.0, 2.0], [3.0, 4.0]])
    assert table.column("b").tolist() == [2.0, 4.0]
