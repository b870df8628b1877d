import sys
import os
import math

import numpy as np
import pytest
from pydantic import ValidationError

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.config.settings import EventSpec, IntegrationConfig, Method
from src.core.errors import NonFiniteStateError
from src.core.types import IntegrationStatus
from src.integrators.runge_kutta import IvpProblem, integrate
from src.verify.checks import rk4_order


def oscillator(t, u):
    return np.array([u[1], -u[0]])


def test_rk4_fixed_step_oscillator():
    problem = IvpProblem(oscillator, 0.0, [1.0, 0.0], 2.0 * math.pi, ("q", "v"))
    curve = integrate(problem, IntegrationConfig(method=Method.RK4, h=0.01))
    assert curve.status is IntegrationStatus.REACHED_T1
    assert curve.final_t == pytest.approx(2.0 * math.pi)
    assert np.max(np.abs(curve.final_state - [1.0, 0.0])) < 1e-7
    assert curve.state_names == ("q", "v")


def test_rk4_is_fourth_order():
    assert 3.7 <= rk4_order() <= 4.3


def test_dp54_tolerance():
    problem = IvpProblem(lambda t, u: -u, 0.0, [1.0], 5.0)
    curve = integrate(problem, IntegrationConfig(abs_tol=1e-12, rel_tol=1e-12))
    assert curve.final_state[0] == pytest.approx(math.exp(-5.0), rel=1e-9)
    # every accepted step is a sample
    assert len(curve) > 10
    assert np.all(np.diff(curve.t) > 0)


def test_probes_recorded_per_sample():
    problem = IvpProblem(oscillator, 0.0, [1.0, 0.0], 3.0)
    energy = {"energy": lambda t, u: 0.5 * (u[0] ** 2 + u[1] ** 2)}
    curve = integrate(problem, IntegrationConfig(abs_tol=1e-11, rel_tol=1e-11), energy)
    assert len(curve.column("energy")) == len(curve)
    assert np.max(np.abs(curve.column("energy") - 0.5)) < 1e-9


def test_event_stops_at_crossing():
    # free fall from height 1 with unit gravity hits the ground at √2
    problem = IvpProblem(lambda t, u: np.array([u[1], -1.0]), 0.0, [1.0, 0.0], 5.0)
    ground = EventSpec(lambda t, u: u[0], direction=-1, name="ground")
    curve = integrate(problem, IntegrationConfig().with_event(ground))
    assert curve.status is IntegrationStatus.EVENT
    assert curve.final_t == pytest.approx(math.sqrt(2.0), abs=1e-9)
    assert abs(curve.final_state[0]) < 1e-10


def test_rising_only_event_ignores_falling_crossing():
    problem = IvpProblem(lambda t, u: np.array([u[1], -1.0]), 0.0, [1.0, 0.0], 2.0)
    rising = EventSpec(lambda t, u: u[0], direction=1)
    curve = integrate(problem, IntegrationConfig().with_event(rising))
    assert curve.status is IntegrationStatus.REACHED_T1


def test_max_steps():
    problem = IvpProblem(oscillator, 0.0, [1.0, 0.0], 1.0)
    curve = integrate(problem, IntegrationConfig(method=Method.RK4, h=0.01, max_steps=3))
    assert curve.status is IntegrationStatus.MAX_STEPS
    assert len(curve) == 4


def test_nonfinite_state_keeps_partial_sample():
    def rhs(t, u):
        return np.array([math.nan]) if t > 0.55 else np.array([1.0])

    problem = IvpProblem(rhs, 0.0, [0.0], 1.0, ("u",))
    with pytest.raises(NonFiniteStateError) as info:
        integrate(problem, IntegrationConfig(method=Method.RK4, h=0.1))
    partial = info.value.partial
    assert partial.status is IntegrationStatus.NONFINITE
    assert len(partial) == 6
    assert partial.final_state[0] == pytest.approx(0.5)


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        integrate(IvpProblem(oscillator, 1.0, [1.0, 0.0], 1.0))


def test_config_validation():
    with pytest.raises(ValidationError):
        IntegrationConfig(h=-0.1)
    with pytest.raises(ValidationError):
        IntegrationConfig().with_updates(abs_tol=0.0)
    assert IntegrationConfig().with_updates(method="rk4").method is Method.RK4
