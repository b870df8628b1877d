"""Path geometries and jet arithmetic."""

from .geometry import GEOMETRY_CATALOG, SecondOrderODE, builtin, eval_jet, is_cubic_in_p
from .jet import FUNCTIONS, Jet

__all__ = [
    "GEOMETRY_CATALOG",
    "SecondOrderODE",
    "builtin",
    "eval_jet",
    "is_cubic_in_p",
    "FUNCTIONS",
    "Jet",
]
