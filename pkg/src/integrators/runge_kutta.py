"""Explicit Runge–Kutta integration: fixed-step RK4 and adaptive Dormand–Prince 5(4).

Every accepted step becomes a sample; optional probe functions add
per-sample diagnostics, and an optional event stops integration at a sign
change of g(t, state), located by bisection.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Tuple

import numpy as np

from ..config.settings import EventSpec, IntegrationConfig, Method
from ..core.errors import NonFiniteStateError
from ..core.types import CurveSample, IntegrationStatus

logger = logging.getLogger(__name__)

RightHandSide = Callable[[float, np.ndarray], np.ndarray]
Probe = Callable[[float, np.ndarray], float]


@dataclass(frozen=True)
class IvpProblem:
    """Initial value problem ẏ = rhs(t, y), y(t0) = y0 on [t0, t1]."""
    rhs: RightHandSide
    t0: float
    y0: np.ndarray
    t1: float
    state_names: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "y0", np.array(self.y0, dtype=float).reshape(-1))

    @property
    def dimension(self) -> int:
        return len(self.y0)


@dataclass(frozen=True)
class ButcherTableau:
    """Explicit Runge–Kutta coefficients; ``error`` = b − b̂ for embedded pairs."""
    name: str
    c: np.ndarray
    a: Tuple[Tuple[float, ...], ...]
    b: np.ndarray
    order: int
    error: Optional[np.ndarray] = None

    @property
    def stages(self) -> int:
        return len(self.c)


RK4 = ButcherTableau(
    name="rk4",
    c=np.array([0.0, 0.5, 0.5, 1.0]),
    a=((), (0.5,), (0.0, 0.5), (0.0, 0.0, 1.0)),
    b=np.array([1 / 6, 1 / 3, 1 / 3, 1 / 6]),
    order=4,
)

_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)

DP54 = ButcherTableau(
    name="dp54",
    c=np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0]),
    a=(
        (),
        (1 / 5,),
        (3 / 40, 9 / 40),
        (44 / 45, -56 / 15, 32 / 9),
        (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
        (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
        (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
    ),
    b=_DP_B5,
    order=5,
    error=_DP_B5 - _DP_B4,
)

TABLEAUS: Dict[Method, ButcherTableau] = {Method.RK4: RK4, Method.DP54: DP54}

# step-size control
SAFETY = 0.9
MIN_FACTOR = 0.1
MAX_FACTOR = 4.0
MAX_BISECTIONS = 200


def rk_step(
    tableau: ButcherTableau, rhs: RightHandSide, t: float, y: np.ndarray, h: float
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """One step of size h; returns (new state, error estimate or None)."""
    k = np.empty((tableau.stages, len(y)))
    for i in range(tableau.stages):
        yi = y.copy()
        for j, aij in enumerate(tableau.a[i]):
            if aij:
                yi += h * aij * k[j]
        k[i] = rhs(t + tableau.c[i] * h, yi)
    y_new = y + h * (tableau.b @ k)
    err = h * (tableau.error @ k) if tableau.error is not None else None
    return y_new, err


@dataclass
class _Recorder:
    """Collects samples and probe values while integrating."""
    probes: Mapping[str, Probe]
    t: List[float] = field(default_factory=list)
    y: List[np.ndarray] = field(default_factory=list)
    diagnostics: Dict[str, List[float]] = field(default_factory=dict)

    def add(self, t: float, y: np.ndarray):
        self.t.append(t)
        self.y.append(y.copy())
        for name, probe in self.probes.items():
            self.diagnostics.setdefault(name, []).append(float(probe(t, y)))

    def build(self, status: IntegrationStatus, names: Tuple[str, ...]) -> CurveSample:
        return CurveSample(
            np.array(self.t), np.array(self.y), dict(self.diagnostics), status, names
        )


def _finite(y: np.ndarray) -> bool:
    return bool(np.all(np.isfinite(y)))


def _crossed(event: EventSpec, g_old: float, g_new: float) -> bool:
    if g_old == 0.0 or not (math.isfinite(g_old) and math.isfinite(g_new)):
        return False
    if g_new != 0.0 and (g_old > 0.0) == (g_new > 0.0):
        return False
    if event.direction > 0:
        return g_old < 0.0
    if event.direction < 0:
        return g_old > 0.0
    return True


def _locate_event(
    tableau: ButcherTableau,
    rhs: RightHandSide,
    event: EventSpec,
    t: float,
    y: np.ndarray,
    h: float,
    g_old: float,
    tol: float,
) -> Tuple[float, np.ndarray]:
    """Bisect the step [t, t+h] for the sign change of g."""
    lo, hi = 0.0, h
    best_t, best_y = t + h, None
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        y_mid, _ = rk_step(tableau, rhs, t, y, mid)
        g_mid = float(event.function(t + mid, y_mid))
        best_t, best_y = t + mid, y_mid
        if abs(g_mid) <= tol:
            break
        if (g_mid > 0.0) == (g_old > 0.0):
            lo = mid
        else:
            hi = mid
        if hi - lo <= 4.0 * np.finfo(float).eps * max(1.0, abs(t)):
            break
    else:
        logger.debug(f"event bisection hit {MAX_BISECTIONS} iterations")
    if best_y is None:
        best_y, _ = rk_step(tableau, rhs, t, y, h)
    return best_t, best_y


def _initial_step(
    rhs: RightHandSide,
    t: float,
    y: np.ndarray,
    f0: np.ndarray,
    span: float,
    config: IntegrationConfig,
    order: int,
) -> float:
    """Starting step from the usual two-evaluation heuristic."""
    scale = config.abs_tol + config.rel_tol * np.abs(y)
    d0 = float(np.sqrt(np.mean((y / scale) ** 2)))
    d1 = float(np.sqrt(np.mean((f0 / scale) ** 2)))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h0 = min(h0, span)
    f1 = rhs(t + h0, y + h0 * f0)
    if not _finite(f1):
        return h0 * 1e-3
    d2 = float(np.sqrt(np.mean(((f1 - f0) / scale) ** 2))) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1.0 / (order + 1))
    return min(100 * h0, h1, span)


def integrate(
    problem: IvpProblem,
    config: Optional[IntegrationConfig] = None,
    probes: Optional[Mapping[str, Probe]] = None,
) -> CurveSample:
    """Integrate problem from t0 to t1.

    Args:
        problem: right-hand side, initial data and end time (t1 > t0).
        config: method, step/tolerances, step cap and optional event.
        probes: name -> f(t, state) evaluated at every sample.

    Returns:
        CurveSample whose status is reached_t1, event or max_steps.

    Raises:
        NonFiniteStateError: the state or right-hand side left ℝⁿ; the
            partial sample (status nonfinite) is attached.
    """
    config = config or IntegrationConfig()
    tableau = TABLEAUS[config.method]
    rhs = problem.rhs
    t, t1 = float(problem.t0), float(problem.t1)
    y = problem.y0.copy()
    if not t1 > t:
        raise ValueError(f"t1={t1} must exceed t0={t}")
    recorder = _Recorder(dict(probes or {}))

    def fail(at: float) -> NonFiniteStateError:
        logger.error(f"non-finite state at t={at}")
        partial = recorder.build(IntegrationStatus.NONFINITE, problem.state_names)
        return NonFiniteStateError(at, partial)

    if not _finite(y):
        raise fail(t)
    recorder.add(t, y)

    event = config.event
    g_old = float(event.function(t, y)) if event else 0.0
    event_tol = config.event_tol * (event.scale if event else 1.0)
    adaptive = tableau.error is not None
    max_step = config.max_step or math.inf
    span = t1 - t

    if adaptive:
        f0 = rhs(t, y)
        if not _finite(f0):
            raise fail(t)
        h = min(_initial_step(rhs, t, y, f0, span, config, tableau.order), max_step)
    else:
        h = min(config.h, max_step)

    steps = 0
    status = IntegrationStatus.REACHED_T1
    end_tol = 1e-13 * max(1.0, abs(t1))
    while t < t1 - end_tol:
        if steps >= config.max_steps:
            status = IntegrationStatus.MAX_STEPS
            logger.warning(f"max_steps={config.max_steps} reached at t={t}")
            break
        step = min(h, t1 - t, max_step)
        last = step >= t1 - t - end_tol
        y_new, err = rk_step(tableau, rhs, t, y, step)

        if adaptive:
            if not _finite(y_new):
                h = step * MIN_FACTOR
                if h <= 1e-14 * max(1.0, abs(t)):
                    raise fail(t)
                logger.debug(f"non-finite trial at t={t}, shrinking step to {h:.3e}")
                continue
            scale = config.abs_tol + config.rel_tol * np.maximum(np.abs(y), np.abs(y_new))
            err_norm = float(np.sqrt(np.mean((err / scale) ** 2)))
            if err_norm == 0.0:
                factor = MAX_FACTOR
            else:
                factor = SAFETY * err_norm ** (-1.0 / tableau.order)
                factor = min(MAX_FACTOR, max(MIN_FACTOR, factor))
            if err_norm > 1.0:
                h = step * factor
                logger.debug(f"rejected step at t={t}: err={err_norm:.3e}, retry h={h:.3e}")
                if h <= 1e-14 * max(1.0, abs(t)):
                    raise fail(t)
                continue
            h = step * factor
        elif not _finite(y_new):
            raise fail(t + step)

        steps += 1
        t_new = t1 if last else t + step

        if event is not None:
            g_new = float(event.function(t_new, y_new))
            if _crossed(event, g_old, g_new):
                t_event, y_event = _locate_event(tableau, rhs, event, t, y, step, g_old, event_tol)
                if t_event > t:
                    recorder.add(t_event, y_event)
                status = IntegrationStatus.EVENT
                logger.info(f"event {event.name!r} at t={t_event}")
                break
            g_old = g_new

        t, y = t_new, y_new
        recorder.add(t, y)

    if status is IntegrationStatus.REACHED_T1:
        logger.info(f"reached t1={t1} after {steps} steps")
    return recorder.build(status, problem.state_names)
