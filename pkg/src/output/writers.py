"""CSV and JSON emitters for sampled runs.

Floats are written with repr(), which is locale-independent and reproduces
the double exactly, so a CSV and the JSON of the same run parse back to
identical values.
"""

import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Union

import numpy as np
from pydantic import BaseModel, Field

from ..core.types import CurveSample

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"
Destination = Union[str, Path, TextIO]


class Table(BaseModel):
    """Named columns over rows of floats."""

    columns: List[str]
    rows: List[List[float]] = Field(default_factory=list)

    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=float).reshape(len(self.rows), len(self.columns))

    def column(self, name: str) -> np.ndarray:
        return self.array()[:, self.columns.index(name)]


class RunDocument(BaseModel):
    """One JSON run record: config echo, samples and a diagnostics summary."""

    schema_version: str = SCHEMA_VERSION
    command: str
    config: Dict[str, Any] = Field(default_factory=dict)
    status: str = ""
    columns: List[str]
    samples: List[List[float]] = Field(default_factory=list)
    summary: Dict[str, Any] = Field(default_factory=dict)

    def table(self) -> Table:
        return Table(columns=self.columns, rows=self.samples)


def format_float(value: float) -> str:
    """Shortest round-tripping text of a double ('nan', 'inf' and '-inf' included)."""
    return repr(float(value))


def curve_table(curve: CurveSample, index: str = "t") -> Table:
    """Index column, then state columns, then diagnostics in insertion order."""
    columns = [index, *curve.state_names, *curve.diagnostics]
    parts = [curve.t[:, None], curve.states]
    parts += [curve.diagnostics[name][:, None] for name in curve.diagnostics]
    data = np.hstack(parts) if len(curve) else np.zeros((0, len(columns)))
    return Table(columns=columns, rows=data.tolist())


def _open(dest: Destination):
    if isinstance(dest, (str, Path)):
        return open(dest, "w", newline="", encoding="utf-8"), True
    return dest, False


def write_csv(table: Table, dest: Destination):
    """RFC-4180-style CSV with a header row and LF line endings."""
    stream, owned = _open(dest)
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([format_float(v) for v in row])
    finally:
        if owned:
            stream.close()


def csv_text(table: Table) -> str:
    buffer = io.StringIO()
    write_csv(table, buffer)
    return buffer.getvalue()


def read_csv(source: Union[str, Path, TextIO]) -> Table:
    """Parse a CSV written by write_csv."""
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as f:
            return read_csv(f)
    reader = csv.reader(source)
    try:
        columns = next(reader)
    except StopIteration:
        raise ValueError("empty CSV") from None
    rows = [[float(v) for v in row] for row in reader if row]
    return Table(columns=columns, rows=rows)


def summarize(table: Table, names: Optional[Sequence[str]] = None) -> Dict[str, float]:
    """``max_abs_<name>`` over finite values of each named column."""
    names = names if names is not None else table.columns
    data = table.array()
    summary = {}
    for name in names:
        values = data[:, table.columns.index(name)]
        finite = values[np.isfinite(values)]
        summary[f"max_abs_{name}"] = float(np.max(np.abs(finite))) if len(finite) else math.nan
    return summary


def build_document(
    command: str,
    table: Table,
    status: str,
    config: Optional[Dict[str, Any]] = None,
    summary: Optional[Dict[str, Any]] = None,
) -> RunDocument:
    return RunDocument(
        command=command,
        config=config or {},
        status=status,
        columns=table.columns,
        samples=table.rows,
        summary=summary or {},
    )


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    if hasattr(value, "value") and not isinstance(value, (int, float, str, bool)):
        return value.value
    return value


def document_text(document: RunDocument) -> str:
    # NaN is written as the bare token NaN, which json.loads reads back
    return json.dumps(_jsonable(document.model_dump()), indent=2, allow_nan=True) + "\n"


def write_json(document: RunDocument, dest: Destination):
    stream, owned = _open(dest)
    try:
        stream.write(document_text(document))
    finally:
        if owned:
            stream.close()


def read_json(source: Union[str, Path, TextIO]) -> RunDocument:
    """Parse and validate a document written by write_json."""
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source.read()
    return RunDocument.model_validate(json.loads(text))

