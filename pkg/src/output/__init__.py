"""Run output: CSV, JSON and SVG."""

from .svg import Figure, complex_points
from .writers import (
    SCHEMA_VERSION,
    RunDocument,
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

__all__ = [
    "Figure",
    "complex_points",
    "SCHEMA_VERSION",
    "RunDocument",
    "Table",
    "build_document",
    "csv_text",
    "curve_table",
    "document_text",
    "format_float",
    "read_csv",
    "read_json",
    "summarize",
    "write_csv",
    "write_json",
]
