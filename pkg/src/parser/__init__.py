"""Expression parser for user-defined geometries."""

from .expr import (
    Binary,
    Constant,
    Expr,
    Parameter,
    Unary,
    Variable,
    evaluate,
    parameters_of,
    parse,
    to_geometry,
    to_source,
    value_at,
)

__all__ = [
    "Binary",
    "Constant",
    "Expr",
    "Parameter",
    "Unary",
    "Variable",
    "evaluate",
    "parameters_of",
    "parse",
    "to_geometry",
    "to_source",
    "value_at",
]
