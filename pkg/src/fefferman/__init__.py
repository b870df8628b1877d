"""Fefferman metric and its null geodesics."""

from .geodesics import (
    GEODESIC_STATE_NAMES,
    chain_distance,
    christoffel,
    geodesic_rhs_explicit,
    geodesic_rhs_generic,
    integrate_null_geodesic,
)
from .metric import lifted_tau_dot, metric_at, metric_components, null_lift, nullity

__all__ = [
    "GEODESIC_STATE_NAMES",
    "chain_distance",
    "christoffel",
    "geodesic_rhs_explicit",
    "geodesic_rhs_generic",
    "integrate_null_geodesic",
    "lifted_tau_dot",
    "metric_at",
    "metric_components",
    "null_lift",
    "nullity",
]
