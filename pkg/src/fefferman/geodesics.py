"""Null geodesics of the Fefferman metric.

Two right-hand sides are provided. The explicit one uses the closed-form
accelerations of the geodesic flow with τ̇ eliminated through the null
condition; it is what the chain equations are reduced from. The generic
one builds Christoffel symbols from finite differences of metric_at and
serves as an independent oracle.
"""

import logging
from typing import Optional

import numpy as np

from ..chains.chain_ode import integrate_chain, resample_chain
from ..config.settings import ChainConfig, EventSpec, GeodesicConfig, Oracle
from ..core.errors import NumericalError, SingularMetricError, TangencyError
from ..core.types import ChainState, CurveSample, FeffermanChartPoint, GeodesicState
from ..geometry.geometry import SecondOrderODE, eval_jet
from ..integrators.runge_kutta import IvpProblem, integrate
from .metric import lifted_tau_dot, metric_at

logger = logging.getLogger(__name__)

GEODESIC_STATE_NAMES = ("x", "y", "p", "tau", "xdot", "ydot", "pdot", "taudot")
FD_STEP = 1e-6


def _explicit(geom: SecondOrderODE, x, y, p, xdot, ydot, pdot, delta_min: float):
    w = ydot - p * xdot
    if not abs(w) > delta_min:
        raise TangencyError(w, delta_min)
    j = eval_jet(geom, x, y, p)
    f, f_p, f_pp, f_ppp = j.f, j.f_p, j.f_pp, j.f_ppp
    td = lifted_tau_dot(f, f_p, f_pp, p, xdot, ydot, pdot)
    xdd = -(f_ppp * w * w + 2.0 * xdot * f_pp * w + 2.0 * xdot**2 * f_p + 4.0 * xdot * td) / 6.0
    ydd = p * xdd + pdot * xdot
    pdd = (
        -(p**3) * xdot**2 * j.f_ypp
        + 2.0 * p * p * xdot * ydot * j.f_ypp
        + 4.0 * p * p * xdot**2 * j.f_yp
        - 2.0 * f * (w * (f_ppp * w + 2.0 * xdot * f_pp) + 2.0 * xdot**2 * f_p + 4.0 * td * xdot)
        + 2.0 * pdot * f_pp * w
        - j.f_xpp * w * w
        - 8.0 * p * xdot * ydot * j.f_yp
        - 6.0 * p * xdot**2 * j.f_y
        + 8.0 * pdot * xdot * f_p
        - p * ydot**2 * j.f_ypp
        + 12.0 * xdot * ydot * j.f_y
        + 6.0 * xdot**2 * j.f_x
        + 4.0 * ydot**2 * j.f_yp
        + 4.0 * pdot * td
    ) / 6.0
    return np.array([xdd, ydd, pdd]), td


def geodesic_rhs_explicit(
    geom: SecondOrderODE, state: GeodesicState, delta_min: float = 0.0
) -> np.ndarray:
    """(ẍ, ÿ, p̈) of the null geodesic through state, τ̇ taken from the null condition.

    Raises:
        TangencyError: ẏ − pẋ vanishes.
    """
    pos = state.position
    xdot, ydot, pdot, _ = state.velocity
    acc, _ = _explicit(geom, pos.x, pos.y, pos.p, xdot, ydot, pdot, delta_min)
    return acc


def christoffel(
    geom: SecondOrderODE, pt: FeffermanChartPoint, fd_step: float = FD_STEP
) -> np.ndarray:
    """Γ^a_bc from fourth-order central differences of the metric (τ-derivatives are 0)."""
    q = pt.as_array()
    g = metric_at(geom, pt).components
    try:
        g_inv = np.linalg.inv(g)
    except np.linalg.LinAlgError as e:
        raise SingularMetricError(f"metric not invertible at {tuple(q)}") from e
    if not np.all(np.isfinite(g_inv)):
        raise SingularMetricError(f"metric not invertible at {tuple(q)}")

    dg = np.zeros((4, 4, 4))
    for d in range(3):
        h = fd_step * max(1.0, abs(q[d]))
        shifted = []
        for k in (2, 1, -1, -2):
            r = q.copy()
            r[d] += k * h
            shifted.append(metric_at(geom, FeffermanChartPoint(*r)).components)
        dg[d] = (-shifted[0] + 8.0 * shifted[1] - 8.0 * shifted[2] + shifted[3]) / (12.0 * h)

    # first-kind symbols [bc, d] = ½(∂_b g_dc + ∂_c g_db − ∂_d g_bc)
    first = 0.5 * (np.einsum("bdc->dbc", dg) + np.einsum("cdb->dbc", dg) - dg)
    return np.einsum("ad,dbc->abc", g_inv, first)


def geodesic_rhs_generic(
    geom: SecondOrderODE, state: GeodesicState, fd_step: float = FD_STEP
) -> np.ndarray:
    """(ẍ, ÿ, p̈, τ̈) = −Γ^a_bc v^b v^c with numerically differentiated Christoffels.

    Raises:
        SingularMetricError: the metric could not be inverted.
    """
    gamma = christoffel(geom, state.position, fd_step)
    v = np.asarray(state.velocity, dtype=float)
    return -np.einsum("abc,b,c->a", gamma, v, v)


def _problem(geom: SecondOrderODE, start: GeodesicState, t1: float, config: GeodesicConfig):
    delta_min = config.delta_min
    if config.oracle is Oracle.EXPLICIT:
        nan = np.full(7, np.nan)

        def rhs(t: float, u: np.ndarray) -> np.ndarray:
            try:
                acc, td = _explicit(geom, u[0], u[1], u[2], u[4], u[5], u[6], delta_min)
            except TangencyError:
                return nan
            return np.array([u[4], u[5], u[6], td, acc[0], acc[1], acc[2]])

        y0 = start.as_array()[:7]
        return IvpProblem(rhs, 0.0, y0, t1, GEODESIC_STATE_NAMES[:7])

    def rhs_generic(t: float, u: np.ndarray) -> np.ndarray:
        acc = geodesic_rhs_generic(geom, GeodesicState.from_array(u), config.fd_step)
        return np.concatenate([u[4:], acc])

    return IvpProblem(rhs_generic, 0.0, start.as_array(), t1, GEODESIC_STATE_NAMES)


def _full_state(geom: SecondOrderODE, u: np.ndarray) -> np.ndarray:
    if len(u) == 8:
        return u
    j = eval_jet(geom, u[0], u[1], u[2])
    td = lifted_tau_dot(j.f, j.f_p, j.f_pp, u[2], u[4], u[5], u[6])
    return np.append(u, td)


def integrate_null_geodesic(
    geom: SecondOrderODE,
    start: GeodesicState,
    t1: float,
    config: Optional[GeodesicConfig] = None,
) -> CurveSample:
    """Integrate a null geodesic in its affine parameter t ∈ [0, t1].

    The state always comes back with the eight columns of
    GEODESIC_STATE_NAMES. Diagnostics: ``nullity`` g(v, v), ``delta``
    (chain transversality (ẏ − pẋ)/ẋ), ``resid`` (projected path residual)
    and, when ``chain_check`` is on, ``chain_dist``: the distance in (y, p)
    to the chain-equation solution at the same x.

    Raises:
        TangencyError: the start is vertical or tangent to the contact distribution.
        ValueError: the start is not null.
    """
    config = config or GeodesicConfig()
    pos = start.position
    xdot, ydot, pdot, taudot = start.velocity
    w0 = ydot - pos.p * xdot
    if not abs(w0) > config.delta_min:
        raise TangencyError(w0, config.delta_min)
    g0 = metric_at(geom, pos).norm(start.velocity)
    if abs(g0) > 1e-8 * (1.0 + float(np.dot(start.velocity, start.velocity))):
        raise ValueError(f"start velocity is not null: g(v,v)={g0:.3e}")

    integration = config.integration
    if config.x_stop is not None:
        x_stop = config.x_stop

        def reach(t: float, u: np.ndarray) -> float:
            return u[0] - x_stop

        integration = integration.with_event(EventSpec(reach, direction=1, name="x_stop"))

    def probe_nullity(t: float, u: np.ndarray) -> float:
        full = _full_state(geom, u)
        return metric_at(geom, FeffermanChartPoint(*full[:4])).norm(full[4:])

    def probe_delta(t: float, u: np.ndarray) -> float:
        return (u[5] - u[2] * u[4]) / u[4] if u[4] != 0.0 else float("nan")

    def probe_resid(t: float, u: np.ndarray) -> float:
        if u[4] == 0.0:
            return float("nan")
        try:
            acc, _ = _explicit(geom, u[0], u[1], u[2], u[4], u[5], u[6], 0.0)
        except TangencyError:
            return float("nan")
        ypp = (acc[1] * u[4] - acc[0] * u[5]) / u[4] ** 3
        return ypp - eval_jet(geom, u[0], u[1], u[5] / u[4]).f

    probes = {"nullity": probe_nullity, "delta": probe_delta, "resid": probe_resid}
    curve = integrate(_problem(geom, start, t1, config), integration, probes)
    states = np.array([_full_state(geom, u) for u in curve.states])
    curve = CurveSample(curve.t, states, curve.diagnostics, curve.status, GEODESIC_STATE_NAMES)
    logger.info(
        f"{config.oracle.value} geodesic in {geom.name!r}: "
        f"{curve.status.value} at t={curve.final_t}, "
        f"max |g(v,v)|={curve.max_abs('nullity'):.3e}"
    )
    if config.chain_check:
        curve = curve.with_diagnostics({"chain_dist": chain_distance(geom, curve, config)})
    return curve


def chain_distance(
    geom: SecondOrderODE, curve: CurveSample, config: GeodesicConfig
) -> np.ndarray:
    """Distance in (y, p) between a projected geodesic and the chain through its start.

    Samples where x has not increased monotonically from the start are nan.
    """
    xs = curve.column("x")
    dist = np.full(len(xs), np.nan)
    u0 = curve.states[0]
    if u0[4] <= 0.0 or len(xs) < 2:
        logger.warning("chain comparison needs ẋ > 0 at the start; skipped")
        return dist
    monotone = np.concatenate([[True], np.diff(xs) > 0])
    run = int(np.argmin(monotone)) if not np.all(monotone) else len(xs)
    x_end = float(xs[run - 1])
    if not x_end > xs[0]:
        return dist
    s0 = ChainState(u0[0], u0[1], u0[2], u0[5] / u0[4], u0[6] / u0[4])
    chain_config = ChainConfig(
        integration=config.integration.with_updates(max_step=config.chain_max_step, event=None),
        delta_min=config.delta_min,
        delta_event=0.0,
    )
    try:
        chain = integrate_chain(geom, s0, x_end, chain_config)
    except NumericalError as e:
        logger.warning(f"chain comparison failed: {e}")
        return dist
    yp = resample_chain(chain, xs[:run])
    dist[:run] = np.hypot(curve.column("y")[:run] - yp[:, 0], curve.column("p")[:run] - yp[:, 1])
    return dist
