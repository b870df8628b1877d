import sys
import os

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.core.errors import (
    DomainError,
    ExprSyntaxError,
    UnboundParameterError,
    UnknownIdentifierError,
)
from src.geometry.geometry import eval_jet
from src.parser.expr import (
    Binary,
    Constant,
    Unary,
    Variable,
    parameters_of,
    parse,
    to_geometry,
    to_source,
    value_at,
)


def test_unary_minus_binds_looser_than_power():
    assert parse("-p^2") == Unary("neg", Binary("^", Variable("p"), Constant(2.0)))
    assert value_at(parse("-p^2"), 0.0, 0.0, 3.0) == -9.0
    assert value_at(parse("(-p)^2"), 0.0, 0.0, 3.0) == 9.0


def test_power_is_right_associative():
    assert value_at(parse("2^3^2"), 0.0, 0.0, 0.0) == 512.0


def test_arithmetic_and_functions():
    assert value_at(parse("x*p - y"), 1.0, 0.5, 2.0) == pytest.approx(1.5)
    assert value_at(parse("sin(pi/2) + exp(0)"), 0.0, 0.0, 0.0) == pytest.approx(2.0)
    assert value_at(parse("1.5e1 / 3"), 0.0, 0.0, 0.0) == pytest.approx(5.0)


@pytest.mark.parametrize("source", ["2^13", "p^-1", "p^1.5", "p^x"])
def test_bad_exponents(source):
    with pytest.raises(ExprSyntaxError):
        parse(source)


def test_syntax_error_offset():
    with pytest.raises(ExprSyntaxError) as info:
        parse("p + * 2")
    assert info.value.offset == 4


@pytest.mark.parametrize("source", ["", "(p", "p)", "sin p", "p $ 2", "sin"])
def test_malformed_input(source):
    with pytest.raises(ExprSyntaxError):
        parse(source)


def test_deep_nesting_is_rejected_cleanly():
    with pytest.raises(ExprSyntaxError):
        parse("(" * 500 + "p" + ")" * 500)
    with pytest.raises(ExprSyntaxError):
        parse("-" * 5000 + "p")


def test_unknown_identifiers():
    with pytest.raises(UnknownIdentifierError):
        parse("foo(p)")
    with pytest.raises(UnknownIdentifierError):
        parse("k*p", parameters=["a"])


def test_parameters_and_binding():
    tree = parse("a*p^3 + b")
    assert parameters_of(tree) == {"a", "b"}
    with pytest.raises(UnboundParameterError):
        to_geometry(tree, {"a": 1.0})
    geom = to_geometry(tree, {"a": 2.0, "b": 0.5})
    j = eval_jet(geom, 0.0, 0.0, 1.0)
    assert j.f == pytest.approx(2.5)
    assert j.f_ppp == pytest.approx(12.0)


def test_domain_error_during_evaluation():
    with pytest.raises(DomainError):
        value_at(parse("log(p)"), 0.0, 0.0, -1.0)
    with pytest.raises(DomainError):
        eval_jet(to_geometry(parse("1/(p - p)")), 0.0, 0.0, 1.0)


@pytest.mark.parametrize(
    "source", ["-p^2", "(-p)^2", "x - (y - p)", "sin(x*p)/(1 + y^2)", "2^3^2", "a/(b*c)"]
)
def test_printer_reparses_to_same_tree(source):
    tree = parse(source)
    assert parse(to_source(tree)) == tree
