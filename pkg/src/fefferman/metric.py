"""Fefferman metric of a path geometry on J¹ × ℝ*.

In the chart (x, y, p, τ), with ω = dy − p dx,

    g = −dx·(dp − f dx) + (1/6) ω·[4 f_p dx + f_pp ω − 4 dτ]

where a·b is the symmetric product ½(a⊗b + b⊗a). The components depend
on f, f_p, f_pp at (x, y, p) only, never on τ. det g = 1/36, and ∂p is
null, so the signature is (2, 2) everywhere.
"""

import logging
from typing import Sequence

import numpy as np

from ..core.errors import TangencyError
from ..core.types import FeffermanChartPoint, GeodesicState, MetricTensor
from ..geometry.geometry import SecondOrderODE, eval_jet

logger = logging.getLogger(__name__)

X, Y, P, TAU = range(4)


def metric_components(f: float, f_p: float, f_pp: float, p: float) -> np.ndarray:
    """4×4 components of g from f, f_p, f_pp at a point with fiber slope p."""
    g = np.zeros((4, 4))
    g[X, X] = f - (2.0 / 3.0) * p * f_p + p * p * f_pp / 6.0
    g[X, Y] = g[Y, X] = f_p / 3.0 - p * f_pp / 6.0
    g[X, P] = g[P, X] = -0.5
    g[X, TAU] = g[TAU, X] = p / 3.0
    g[Y, Y] = f_pp / 6.0
    g[Y, TAU] = g[TAU, Y] = -1.0 / 3.0
    return g


def metric_at(geom: SecondOrderODE, pt: FeffermanChartPoint) -> MetricTensor:
    """Metric at pt.

    Raises:
        DomainError: f cannot be evaluated at (x, y, p).
    """
    j = eval_jet(geom, pt.x, pt.y, pt.p)
    return MetricTensor(metric_components(j.f, j.f_p, j.f_pp, pt.p))


def lifted_tau_dot(
    f: float, f_p: float, f_pp: float, p: float, xdot: float, ydot: float, pdot: float
) -> float:
    """τ̇ that makes (ẋ, ẏ, ṗ, τ̇) null; requires ẏ − pẋ ≠ 0."""
    w = ydot - p * xdot
    return f_p * xdot + 0.25 * f_pp * w - 1.5 * xdot * (pdot - f * xdot) / w


def null_lift(
    geom: SecondOrderODE,
    x: float,
    y: float,
    p: float,
    direction: Sequence[float],
    tau: float = 0.0,
    delta_min: float = 0.0,
) -> GeodesicState:
    """Unique null velocity above the transverse direction (ẋ, ẏ, ṗ).

    Raises:
        TangencyError: ẏ − pẋ vanishes (|ẏ − pẋ| ≤ delta_min).
    """
    xdot, ydot, pdot = (float(v) for v in direction)
    w = ydot - p * xdot
    if abs(w) <= delta_min:
        raise TangencyError(w, delta_min)
    j = eval_jet(geom, x, y, p)
    tau_dot = lifted_tau_dot(j.f, j.f_p, j.f_pp, p, xdot, ydot, pdot)
    return GeodesicState(FeffermanChartPoint(x, y, p, tau), (xdot, ydot, pdot, tau_dot))


def nullity(geom: SecondOrderODE, state: GeodesicState) -> float:
    """g(v, v) at the state's position."""
    return metric_at(geom, state.position).norm(state.velocity)
