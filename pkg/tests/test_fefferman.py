import sys
import os

import numpy as np
import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.config.settings import GeodesicConfig, IntegrationConfig, Oracle
from src.core.errors import TangencyError
from src.core.types import FeffermanChartPoint, IntegrationStatus
from src.fefferman.geodesics import (
    GEODESIC_STATE_NAMES,
    geodesic_rhs_explicit,
    geodesic_rhs_generic,
    integrate_null_geodesic,
)
from src.fefferman.metric import metric_at, metric_components, null_lift, nullity
from src.geometry.geometry import builtin

TIGHT = IntegrationConfig(abs_tol=1e-11, rel_tol=1e-11)


def test_metric_determinant_is_constant():
    rng = np.random.default_rng(3)
    for f, f_p, f_pp, p in rng.uniform(-2.0, 2.0, size=(20, 4)):
        assert np.linalg.det(metric_components(f, f_p, f_pp, p)) == pytest.approx(1.0 / 36.0)


def test_metric_does_not_depend_on_tau():
    geom = builtin("hooke")
    a = metric_at(geom, FeffermanChartPoint(0.3, -0.2, 0.7, 0.0)).components
    b = metric_at(geom, FeffermanChartPoint(0.3, -0.2, 0.7, 5.0)).components
    assert np.array_equal(a, b)


@pytest.mark.parametrize("name", ["flat", "hooke", "circles"])
def test_split_signature(name):
    geom = builtin(name)
    rng = np.random.default_rng(4)
    for x, y, p in rng.uniform(-1.5, 1.5, size=(25, 3)):
        assert metric_at(geom, FeffermanChartPoint(x, y, p)).signature() == (2, 2)


def test_fiber_direction_is_null():
    g = metric_at(builtin("hooke"), FeffermanChartPoint(0.1, 0.2, 0.3))
    assert g.norm([0.0, 0.0, 1.0, 0.0]) == 0.0


def test_null_lift():
    geom = builtin("hooke")
    state = null_lift(geom, 0.2, -0.1, 0.4, (1.0, 0.9, 0.3))
    assert abs(nullity(geom, state)) < 1e-13
    with pytest.raises(TangencyError):
        null_lift(geom, 0.0, 0.0, 1.0, (1.0, 1.0, 0.0))


def test_oracles_agree_pointwise():
    geom = builtin("hooke")
    state = null_lift(geom, 0.2, -0.1, 0.4, (1.0, 0.9, 0.3))
    explicit = geodesic_rhs_explicit(geom, state)
    generic = geodesic_rhs_generic(geom, state)
    assert np.max(np.abs(explicit - generic[:3])) < 1e-6


def test_flat_geodesic_projects_to_chain():
    geom = builtin("flat")
    start = null_lift(geom, 0.0, 0.0, 0.0, (1.0, 1.0, 1.0))
    config = GeodesicConfig(integration=TIGHT, x_stop=1.0)
    curve = integrate_null_geodesic(geom, start, 4.0, config)
    assert curve.state_names == GEODESIC_STATE_NAMES
    assert curve.max_abs("nullity") < 1e-8
    assert curve.max_abs("chain_dist") < 1e-6
    if curve.status is IntegrationStatus.EVENT:
        assert curve.final_state[0] == pytest.approx(1.0, abs=1e-9)


def test_explicit_and_generic_integrations_agree():
    geom = builtin("hooke")
    start = null_lift(geom, 0.0, 0.1, 0.2, (1.0, 0.8, 0.1))
    runs = {}
    for oracle in (Oracle.EXPLICIT, Oracle.GENERIC):
        config = GeodesicConfig(integration=TIGHT, oracle=oracle, chain_check=False)
        runs[oracle] = integrate_null_geodesic(geom, start, 0.5, config)
    explicit, generic = runs[Oracle.EXPLICIT], runs[Oracle.GENERIC]
    assert explicit.status is generic.status is IntegrationStatus.REACHED_T1
    assert np.max(np.abs(explicit.final_state[:7] - generic.final_state[:7])) < 1e-6


def test_non_null_start_rejected():
    geom = builtin("flat")
    start = null_lift(geom, 0.0, 0.0, 0.0, (1.0, 1.0, 1.0))
    bad = type(start)(start.position, (1.0, 1.0, 1.0, start.velocity[3] + 1.0))
    with pytest.raises(ValueError):
        integrate_null_geodesic(geom, bad, 1.0)
