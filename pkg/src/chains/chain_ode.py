"""Reduced chain equations of a path geometry y″ = f(x, y, y′).

Chains are integrated as graphs (y(x), p(x)) over x. Along a chain with
Δ = y′ − p,

    y″ = f + f_p Δ + ½ f_pp Δ² + ⅙ f_ppp Δ³
    p″ = −2(p′ − f)²/Δ + f_p(3p′ − 2f) + f_x + p f_y + [f_pp(p′ − f) + 2 f_y] Δ
         + ⅙ [f_ppp(p′ − 2f) − f_xpp + 4 f_yp − p f_ypp] Δ²

with every partial taken at (x, y, p). The y″ equation is the cubic Taylor
polynomial of f(x, y, ·) about p evaluated at y′, so a chain projects to a
path exactly when that polynomial reproduces f(x, y, y′).
"""

import logging
from typing import Optional

import numpy as np

from ..config.settings import ChainConfig, EventSpec
from ..core.errors import TangencyError
from ..core.types import ChainDerivative, ChainState, CurveSample
from ..geometry.geometry import SecondOrderODE, eval_jet
from ..geometry.jet import Jet
from ..integrators.runge_kutta import IvpProblem, integrate

logger = logging.getLogger(__name__)

DELTA_MIN = 1e-10
CHAIN_STATE_NAMES = ("y", "p", "yp", "pp")


def _taylor3(j: Jet, delta: float) -> float:
    return j.f + j.f_p * delta + 0.5 * j.f_pp * delta**2 + j.f_ppp * delta**3 / 6.0


def chain_rhs(geom: SecondOrderODE, s: ChainState, delta_min: float = DELTA_MIN) -> ChainDerivative:
    """(y″, p″) of the chain through s, from a single jet evaluation.

    Raises:
        TangencyError: |Δ| < delta_min.
    """
    delta = s.delta
    if not abs(delta) >= delta_min:
        raise TangencyError(delta, delta_min)
    j = eval_jet(geom, s.x, s.y, s.p)
    f, p, pp = j.f, s.p, s.pp
    lag = pp - f
    ppp = (
        -2.0 * lag * lag / delta
        + j.f_p * (3.0 * pp - 2.0 * f)
        + j.f_x
        + p * j.f_y
        + (j.f_pp * lag + 2.0 * j.f_y) * delta
        + (j.f_ppp * (pp - 2.0 * f) - j.f_xpp + 4.0 * j.f_yp - p * j.f_ypp) * delta**2 / 6.0
    )
    return ChainDerivative(_taylor3(j, delta), ppp)


def path_rhs(geom: SecondOrderODE, x: float, y: float, yp: float) -> float:
    """y″ of the path through (x, y) with slope y′."""
    return eval_jet(geom, x, y, yp).f


def cubic_taylor(geom: SecondOrderODE, x: float, y: float, p: float, yp: float) -> float:
    """Cubic Taylor polynomial of f(x, y, ·) about p, evaluated at y′."""
    return _taylor3(eval_jet(geom, x, y, p), yp - p)


def projectivity_residual(geom: SecondOrderODE, s: ChainState) -> float:
    """y″ along the chain minus f(x, y, y′)."""
    return cubic_taylor(geom, s.x, s.y, s.p, s.yp) - path_rhs(geom, s.x, s.y, s.yp)


def _chain_problem(geom: SecondOrderODE, s0: ChainState, x1: float, delta_min: float) -> IvpProblem:
    nan = np.full(4, np.nan)

    def rhs(x: float, u: np.ndarray) -> np.ndarray:
        try:
            d = chain_rhs(geom, ChainState.from_array(x, u), delta_min)
        except TangencyError:
            return nan
        return np.array([u[2], u[3], d.ypp, d.ppp])

    return IvpProblem(rhs, s0.x, s0.as_array(), x1, CHAIN_STATE_NAMES)


def integrate_chain(
    geom: SecondOrderODE, s0: ChainState, x1: float, config: Optional[ChainConfig] = None
) -> CurveSample:
    """Integrate the chain through s0 from s0.x to x1.

    Stops early with status ``event`` when |Δ| falls to ``delta_event``.
    Diagnostics: ``delta`` (Δ) and ``resid`` (projectivity residual).

    Raises:
        TangencyError: the initial data is tangent (|Δ₀| < delta_min).
    """
    config = config or ChainConfig()
    if not abs(s0.delta) >= config.delta_min:
        raise TangencyError(s0.delta, config.delta_min)

    integration = config.integration
    if config.delta_event > 0.0:
        threshold = config.delta_event

        def tangency(x: float, u: np.ndarray) -> float:
            return abs(u[2] - u[1]) - threshold

        integration = integration.with_event(EventSpec(tangency, direction=-1, name="tangency"))

    probes = {
        "delta": lambda x, u: u[2] - u[1],
        "resid": lambda x, u: projectivity_residual(geom, ChainState.from_array(x, u)),
    }
    curve = integrate(_chain_problem(geom, s0, x1, config.delta_min), integration, probes)
    logger.info(
        f"chain in {geom.name!r} from x={s0.x}: {curve.status.value} at x={curve.final_t}, "
        f"max |resid|={curve.max_abs('resid'):.3e}"
    )
    return curve


def projectivity_defect(
    geom: SecondOrderODE, s0: ChainState, x1: float, config: Optional[ChainConfig] = None
) -> float:
    """Largest |y″_chain − f(x, y, y′)| over the chain samples."""
    return integrate_chain(geom, s0, x1, config).max_abs("resid")


def resample_chain(curve: CurveSample, xs: np.ndarray) -> np.ndarray:
    """(y, p) at xs by cubic Hermite interpolation of a chain sample.

    Points outside the sampled range come back as nan.
    """
    xs = np.asarray(xs, dtype=float)
    grid = curve.t
    out = np.full((len(xs), 2), np.nan)
    if len(grid) < 2:
        return out
    idx = np.searchsorted(grid, xs, side="right") - 1
    inside = (xs >= grid[0]) & (xs <= grid[-1])
    idx = np.clip(idx, 0, len(grid) - 2)
    x0, x1 = grid[idx], grid[idx + 1]
    h = x1 - x0
    s = (xs - x0) / h
    h00 = 2 * s**3 - 3 * s**2 + 1
    h10 = s**3 - 2 * s**2 + s
    h01 = -2 * s**3 + 3 * s**2
    h11 = s**3 - s**2
    u0, u1 = curve.states[idx], curve.states[idx + 1]
    for col, (value, slope) in enumerate(((0, 2), (1, 3))):
        out[:, col] = (
            h00 * u0[:, value]
            + h10 * h * u0[:, slope]
            + h01 * u1[:, value]
            + h11 * h * u1[:, slope]
        )
    out[~inside] = np.nan
    return out
