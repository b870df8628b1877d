"""Chains of the path geometry of circles of radius 1.

Up to rigid motion and affine reparametrization every chain solves

    ż = e^{iθ}[c − i(θ̇/2 + sin θ)],   θ̇² = F(θ, c) = 8c cos θ + 4 sin²θ − 2c²

with c ∈ [0, 4). θ oscillates in [−θmax, θmax]; θ̇ = ±√F flips sign at
each turning point, where √F stops being Lipschitz; circles_chain crosses
a band around each turn with the second-order form instead.
"""

import cmath
import logging
import math
from typing import Optional

import numpy as np

from ..config.settings import CirclesConfig, EventSpec, IntegrationConfig
from ..core.errors import RangeError
from ..core.types import CurveSample, IntegrationStatus
from ..integrators.runge_kutta import IvpProblem, integrate

logger = logging.getLogger(__name__)

C_MAX = 4.0
CIRCLE_STATE_NAMES = ("theta", "zx", "zy")
NEWTON_STATE_NAMES = ("theta", "thetadot", "zx", "zy")


def circles_energy(theta, c: float):
    """F(θ, c) = 8c cos θ + 4 sin²θ − 2c²."""
    return 8.0 * c * np.cos(theta) + 4.0 * np.sin(theta) ** 2 - 2.0 * c * c


def circles_theta_max(c: float) -> float:
    """Half-width of {θ : F(θ, c) ≥ 0}, cos⁻¹(c − √(c²/2 + 1)).

    Raises:
        RangeError: c outside [0, 4].
    """
    if not 0.0 <= c <= C_MAX:
        raise RangeError("c", c, "[0, 4]")
    if c == 0.0:
        return math.pi
    if c == C_MAX:
        return 0.0
    return math.acos(c - math.sqrt(c * c / 2.0 + 1.0))


def circles_newton_rhs(theta: float, c: float, r: float = 1.0) -> float:
    """θ̈ = 4r sin θ (r cos θ − c)."""
    return 4.0 * r * math.sin(theta) * (r * math.cos(theta) - c)


def circles_pendulum_rhs(phi: float, y: float, c: float, r: float = 1.0) -> np.ndarray:
    """(φ̇, ẏ) = (−y, 4r(c − r cos φ) sin φ)."""
    return np.array([-y, 4.0 * r * (c - r * math.cos(phi)) * math.sin(phi)])


def circles_momentum(c: float, phi: float, y: float, r: float = 1.0) -> np.ndarray:
    """Momentum of the circles model from pendulum variables (φ, y).

    P₂ = r cos φ, P₃ = −r sin φ, P₄ = c/3 and y = 4P₁ − 2P₃.
    """
    P3 = -r * math.sin(phi)
    return np.array([(y + 2.0 * P3) / 4.0, r * math.cos(phi), P3, c / 3.0])


def _z_velocity(theta: float, thetadot: float, c: float) -> complex:
    return cmath.exp(1j * theta) * complex(c, -(0.5 * thetadot + math.sin(theta)))


def _check_c(c: float):
    if not 0.0 <= c < C_MAX:
        raise RangeError("c", c, "[0, 4)")


def _initial_theta(c: float, theta0: Optional[float]) -> float:
    if theta0 is None:
        return math.pi / 2.0 if c == 0.0 else 0.0
    if c == 0.0 and math.isclose(math.sin(theta0), 0.0, abs_tol=1e-12):
        raise RangeError("theta0", theta0, "θ(0) ∉ {0, π} when c = 0")
    return theta0


def _peak_energy(c: float) -> float:
    """max F(·, c) over θ: at θ = 0 for c ≥ 1, at cos θ = c below."""
    return 8.0 * c - 2.0 * c * c if c >= 1.0 else 2.0 * c * c + 4.0


def circles_chain(
    c: float,
    t1: float,
    config: Optional[CirclesConfig] = None,
    theta0: Optional[float] = None,
    direction: int = 1,
) -> CurveSample:
    """Integrate the normalized circle chain with z(0) = 0 over [0, t1].

    θ(0) is 0, or π/2 when c = 0. Away from turning points the state
    (θ, Re z, Im z) follows θ̇ = s√F. Once F falls to ``turn_band`` times
    its peak the chain switches to θ̈ = 4 sin θ (cos θ − c) and comes back
    to θ̇ = s√F, with s read off the integrated θ̇, when F has risen past
    the band again.

    Diagnostics: ``excess`` = |θ| − θmax (≤ 0 up to rounding),
    ``thetadot`` and ``energy`` = θ̇² − F.

    Raises:
        RangeError: c ∉ [0, 4), or θ(0) ∈ {0, π} with c = 0.
    """
    _check_c(c)
    config = config or CirclesConfig()
    theta_start = _initial_theta(c, theta0)
    theta_max = circles_theta_max(c)
    sign = 1.0 if direction >= 0 else -1.0

    def first_order(s: float):
        def rhs(t: float, u: np.ndarray) -> np.ndarray:
            thetadot = s * math.sqrt(max(circles_energy(u[0], c), 0.0))
            dz = _z_velocity(u[0], thetadot, c)
            return np.array([thetadot, dz.real, dz.imag])

        return rhs

    def second_order(t: float, u: np.ndarray) -> np.ndarray:
        dz = _z_velocity(u[0], u[1], c)
        return np.array([u[1], circles_newton_rhs(u[0], c), dz.real, dz.imag])

    base: IntegrationConfig = config.integration
    ts, states, rates = [0.0], [np.array([theta_start, 0.0, 0.0])], []
    rates.append(sign * math.sqrt(max(circles_energy(theta_start, c), 0.0)))
    t, turns = 0.0, 0
    status = IntegrationStatus.REACHED_T1

    # c = 0 has no turning points; θ only creeps toward 0 or π
    if c == 0.0:
        problem = IvpProblem(first_order(sign), 0.0, states[0], t1, CIRCLE_STATE_NAMES)
        segment = integrate(problem, base)
        ts, states = list(segment.t), list(segment.states)
        rates = [sign * math.sqrt(max(circles_energy(u[0], c), 0.0)) for u in states]
        status = segment.status
    else:
        band = config.turn_band * _peak_energy(c)

        def in_band(t: float, u: np.ndarray) -> float:
            return circles_energy(u[0], c) - band

        entering = base.with_event(EventSpec(in_band, direction=-1, name="turn"))
        leaving = EventSpec(in_band, direction=1, name="turn")

        def apex_or_exit(s: float) -> EventSpec:
            # falls through 0 at θ̇ = 0 or where F climbs back to the band
            def g(t: float, u: np.ndarray) -> float:
                return min(s * u[1], band - circles_energy(u[0], c))

            return EventSpec(g, direction=-1, name="apex")

        def newton_segment(t0: float, event: EventSpec) -> CurveSample:
            u0 = np.array([states[-1][0], rates[-1], states[-1][1], states[-1][2]])
            problem = IvpProblem(second_order, t0, u0, t1, NEWTON_STATE_NAMES)
            segment = integrate(problem, base.with_event(event))
            ts.extend(segment.t[1:])
            states.extend(segment.states[1:, [0, 2, 3]])
            rates.extend(segment.states[1:, 1])
            return segment

        turning = circles_energy(theta_start, c) <= band

        while t < t1:
            if turning:
                if turns >= config.max_turns:
                    status = IntegrationStatus.MAX_STEPS
                    logger.warning(f"circle chain c={c}: stopped after {turns} turns at t={t}")
                    break
                segment = newton_segment(t, apex_or_exit(sign))
                end = segment.final_state
                apex = abs(end[1]) < abs(band - circles_energy(end[0], c))
                if segment.status is IntegrationStatus.EVENT and apex:
                    turns += 1
                    segment = newton_segment(segment.final_t, leaving)
                sign = 1.0 if segment.final_state[1] >= 0.0 else -1.0
            else:
                problem = IvpProblem(first_order(sign), t, states[-1], t1, CIRCLE_STATE_NAMES)
                segment = integrate(problem, entering)
                ts.extend(segment.t[1:])
                states.extend(segment.states[1:])
                rates.extend(
                    sign * math.sqrt(max(circles_energy(u[0], c), 0.0))
                    for u in segment.states[1:]
                )
            t = segment.final_t
            if segment.status is not IntegrationStatus.EVENT:
                status = segment.status
                break
            turning = not turning
    logger.info(f"circle chain c={c}: {turns} turns, {status.value} at t={ts[-1]}")

    states_arr = np.array(states)
    thetas = states_arr[:, 0]
    thetadot = np.array(rates)
    diagnostics = {
        "excess": np.abs(thetas) - theta_max,
        "thetadot": thetadot,
        "energy": thetadot**2 - circles_energy(thetas, c),
    }
    return CurveSample(np.array(ts), states_arr, diagnostics, status, CIRCLE_STATE_NAMES)


def circles_newton(
    c: float,
    t1: float,
    config: Optional[IntegrationConfig] = None,
    theta0: Optional[float] = None,
    direction: int = 1,
) -> CurveSample:
    """Same chain from the second-order form θ̈ = 4 sin θ (cos θ − c).

    Independent of the turning-point handling in circles_chain; the
    diagnostic ``energy`` is θ̇² − F, which stays 0 along exact solutions.
    """
    _check_c(c)
    theta = _initial_theta(c, theta0)
    thetadot = (1.0 if direction >= 0 else -1.0) * math.sqrt(max(circles_energy(theta, c), 0.0))

    def rhs(t: float, u: np.ndarray) -> np.ndarray:
        dz = _z_velocity(u[0], u[1], c)
        return np.array([u[1], circles_newton_rhs(u[0], c), dz.real, dz.imag])

    problem = IvpProblem(rhs, 0.0, [theta, thetadot, 0.0, 0.0], t1, NEWTON_STATE_NAMES)
    probes = {"energy": lambda t, u: u[1] ** 2 - circles_energy(u[0], c)}
    return integrate(problem, config, probes)


def circles_amplitude(curve: CurveSample) -> float:
    """max |θ| over a circle chain sample."""
    return float(np.max(np.abs(curve.column("theta"))))


def fit_circle(points: np.ndarray):
    """Least-squares circle through complex points; returns (center, radius, max residual)."""
    points = np.asarray(points, dtype=complex)
    x, y = points.real, points.imag
    M = np.column_stack([x, y, np.ones_like(x)])
    sol, *_ = np.linalg.lstsq(M, x * x + y * y, rcond=None)
    center = complex(sol[0] / 2.0, sol[1] / 2.0)
    radius = math.sqrt(sol[2] + abs(center) ** 2)
    residual = float(np.max(np.abs(np.abs(points - center) - radius)))
    return center, radius, residual


def circles_probe(curve: CurveSample, c: float) -> dict:
    """Exploratory: dual curve z + e^{iθ} and the count of inflection directions.

    An inflection direction is a sign change of Im(conj(ż)·e^{iθ}), the
    turning of the chain's line field against its trajectory.
    """
    theta = curve.column("theta")
    z = curve.column("zx") + 1j * curve.column("zy")
    thetadot = curve.column("thetadot")
    zdot = np.exp(1j * theta) * (c - 1j * (thetadot / 2.0 + np.sin(theta)))
    cross = np.imag(np.conj(zdot) * np.exp(1j * theta))
    nonzero = cross[np.abs(cross) > 1e-12]
    changes = int(np.sum(np.signbit(nonzero[1:]) != np.signbit(nonzero[:-1])))
    return {"dual": z + np.exp(1j * theta), "inflection_changes": changes}
