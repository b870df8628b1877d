import sys
import os
import math

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.core.errors import DomainError
from src.geometry.geometry import builtin, eval_jet, is_cubic_in_p
from src.geometry.jet import Jet, log, sin, sqrt


def test_cubic_in_p_partials():
    j = Jet.seed_p(2.0) ** 3
    assert j.f == 8.0
    assert j.f_p == pytest.approx(12.0)
    assert j.f_pp == pytest.approx(12.0)
    assert j.f_ppp == pytest.approx(6.0)
    assert j.f_pppp == 0.0


def test_hooke_mixed_partials():
    # f = (xp - y)^3 at (1, 0.5, 2), where xp - y = 1.5
    j = eval_jet(builtin("hooke"), 1.0, 0.5, 2.0)
    expected = {
        "f": 3.375,
        "f_x": 13.5,
        "f_y": -6.75,
        "f_p": 6.75,
        "f_pp": 9.0,
        "f_ppp": 6.0,
        "f_pppp": 0.0,
        "f_xp": 24.75,
        "f_yp": -9.0,
        "f_xpp": 30.0,
        "f_ypp": -6.0,
    }
    partials = j.partials()
    for name, value in expected.items():
        assert partials[name] == pytest.approx(value, abs=1e-12), name


def test_sin_derivatives_cycle():
    j = sin(Jet.seed_p(0.3))
    assert j.f_p == pytest.approx(math.cos(0.3), rel=1e-13)
    assert j.f_pp == pytest.approx(-math.sin(0.3), rel=1e-13)
    assert j.f_ppp == pytest.approx(-math.cos(0.3), rel=1e-13)
    assert j.f_pppp == pytest.approx(math.sin(0.3), rel=1e-12)


def test_circles_geometry_first_derivative():
    j = eval_jet(builtin("circles"), 0.0, 0.0, 1.0)
    assert j.f == pytest.approx(2.0 ** 1.5)
    assert j.f_p == pytest.approx(3.0 * math.sqrt(2.0))
    assert j.f_x == 0.0 and j.f_y == 0.0


def test_chain_rule_through_x_branch():
    # sin(x p) has ∂x∂p = cos(xp) - xp sin(xp)
    x, p = 0.7, 1.3
    j = sin(Jet.seed_x(x) * Jet.seed_p(p))
    assert j.f_xp == pytest.approx(math.cos(x * p) - x * p * math.sin(x * p), rel=1e-12)


def test_domain_errors():
    with pytest.raises(DomainError):
        Jet.seed_p(1.0) / 0.0
    with pytest.raises(DomainError):
        log(Jet.seed_p(-1.0))
    with pytest.raises(DomainError):
        sqrt(Jet.seed_p(0.0))
    with pytest.raises(DomainError):
        (Jet.seed_p(0.0)).reciprocal()


def test_coefficient_outside_truncation():
    j = Jet.seed_x(1.0)
    with pytest.raises(IndexError):
        j.coefficient(1, 1, 0)
    with pytest.raises(IndexError):
        j.coefficient(0, 0, 5)


def test_poly_p_projectivity_sampling():
    points = [(0.0, 0.0, p) for p in (-1.0, 0.0, 0.5, 2.0)]
    cubic = builtin("poly-p", {"a3": 1.0, "a1": -2.0})
    quartic = builtin("poly-p", {"a4": 1.0})
    assert is_cubic_in_p(cubic, points, 1e-12)
    assert not is_cubic_in_p(quartic, points, 1e-12)
    with pytest.raises(ValueError):
        is_cubic_in_p(cubic, [], 1e-12)
