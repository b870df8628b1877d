import sys
import os

import numpy as np
import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.chains.chain_ode import (
    chain_rhs,
    integrate_chain,
    projectivity_defect,
    projectivity_residual,
    resample_chain,
)
from src.config.settings import ChainConfig, IntegrationConfig
from src.core.errors import TangencyError
from src.core.types import ChainState, IntegrationStatus
from src.geometry.geometry import builtin
from src.parser.expr import parse, to_geometry

TIGHT = ChainConfig(integration=IntegrationConfig(abs_tol=1e-12, rel_tol=1e-12))


def test_flat_chain_closed_form():
    # f = 0 from (0, 0, 0, 1, 1): y = x and p = x / (1 + x)
    curve = integrate_chain(builtin("flat"), ChainState(0.0, 0.0, 0.0, 1.0, 1.0), 3.0, TIGHT)
    assert curve.status is IntegrationStatus.REACHED_T1
    x = curve.t
    assert np.max(np.abs(curve.column("y") - x)) < 1e-10
    assert np.max(np.abs(curve.column("p") - x / (1.0 + x))) < 1e-9
    assert np.max(np.abs(curve.column("delta") - 1.0 / (1.0 + x))) < 1e-9
    assert curve.max_abs("resid") == 0.0


def test_tangency_event():
    config = ChainConfig(delta_event=0.3)
    curve = integrate_chain(builtin("flat"), ChainState(0.0, 0.0, 0.0, 1.0, 1.0), 10.0, config)
    assert curve.status is IntegrationStatus.EVENT
    assert curve.final_t == pytest.approx(7.0 / 3.0, abs=1e-6)


def test_tangent_start_rejected():
    with pytest.raises(TangencyError):
        integrate_chain(builtin("flat"), ChainState(0.0, 0.0, 1.0, 1.0, 0.0), 1.0)
    with pytest.raises(TangencyError):
        chain_rhs(builtin("flat"), ChainState(0.0, 0.0, 0.0, 0.0, 0.0))


def test_chain_rhs_flat():
    d = chain_rhs(builtin("flat"), ChainState(0.0, 0.0, 0.0, 2.0, 1.0))
    assert d.ypp == 0.0
    assert d.ppp == pytest.approx(-1.0)


@pytest.mark.parametrize("name", ["flat", "hooke"])
def test_projective_builtins_have_no_defect(name):
    s0 = ChainState(0.5, 0.1, 0.2, 0.9, 0.3)
    assert projectivity_defect(builtin(name), s0, 1.0) < 1e-8


def test_quartic_defect_is_reported():
    geom = to_geometry(parse("p^4"))
    s0 = ChainState(0.0, 0.0, 0.0, 1.0, 0.0)
    assert projectivity_residual(geom, s0) == pytest.approx(-1.0)
    assert projectivity_defect(geom, s0, 0.5) >= 1.0


def test_resample_matches_grid_and_flags_outside():
    curve = integrate_chain(builtin("hooke"), ChainState(0.0, 0.0, 0.0, 1.0, 0.5), 0.5)
    grid = curve.t[[0, 3, -1]]
    yp = resample_chain(curve, grid)
    assert np.allclose(yp, curve.states[[0, 3, -1], :2], atol=1e-14)
    outside = resample_chain(curve, np.array([-1.0, 2.0]))
    assert np.all(np.isnan(outside))
