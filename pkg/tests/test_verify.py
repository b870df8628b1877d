import sys
import os
import math

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.config import VerifyConfig
from src.core.errors import UsageError
from src.parser.expr import parse
from src.verify import (
    CHECKS,
    Check,
    CheckResult,
    Metric,
    SuiteReport,
    format_report,
    run_check,
    run_suite,
    select_checks,
)
from src.verify.checks import (
    fd_partial,
    float_value,
    geodesic_chain_geometries,
    parser_fuzz_crashes,
    rk4_order,
)


def test_registered_checks():
    assert list(CHECKS.entries) == [
        "projectivity-forward",
        "projectivity-converse",
        "geodesic-chain",
        "metric-signature",
        "euler-oracle",
        "flat-closed-forms",
        "circles",
        "hooke",
        "horocycle",
        "infrastructure",
    ]


def test_select_checks_by_substring():
    assert [c.name for c in select_checks("projectivity")] == [
        "projectivity-forward",
        "projectivity-converse",
    ]
    assert [c.name for c in select_checks("hooke, horocycle")] == ["hooke", "horocycle"]
    assert len(select_checks()) == len(CHECKS.entries)
    with pytest.raises(UsageError, match="matches no check"):
        select_checks("nomatch")


def test_metric_kinds():
    assert Metric("a", 1e-9, 1e-8).passed
    assert not Metric("a", 1e-8, 1e-8).passed
    assert not Metric("a", math.nan, 1.0).passed
    assert Metric("a", 0.3, 0.1, "min").passed
    assert Metric("a", 4.0, 3.7, "range", 4.3).passed
    assert not Metric("a", 4.4, 3.7, "range", 4.3).passed
    assert Metric("a", 0.0, 0.0, "zero").passed
    assert not Metric("a", 1e-300, 0.0, "zero").passed
    assert Metric("a", 0.0, 1e-8).bound == "< 1.0e-08"
    assert Metric("a", 0.0, 0.0, "zero").bound == "= 0"


def test_tolerance_scale_loosens_both_directions():
    result = CheckResult("scaled")
    result.below("small", 5e-8, 1e-8, 10.0)
    result.above("large", 0.05, 0.1, 10.0)
    result.exactly_zero("exact", 0.0)
    assert result.passed
    assert [m.limit for m in result.metrics] == [pytest.approx(1e-7), pytest.approx(0.01), 0.0]


def test_empty_result_fails():
    assert not CheckResult("nothing").passed


def test_run_check_reports_exceptions():
    def explode(scale):
        raise RuntimeError("boom")

    result = run_check(Check("explodes", "always raises", explode))
    assert not result.passed
    assert result.error == "RuntimeError: boom"
    assert result.seconds >= 0.0


def test_horocycle_check_passes():
    result = run_check(CHECKS.get("horocycle"))
    assert result.passed, format_report(SuiteReport([result], result.seconds))


def test_geodesic_chain_check_covers_every_geometry_in_time():
    result = run_check(CHECKS.get("geodesic-chain"))
    assert result.passed, format_report(SuiteReport([result], result.seconds))
    assert result.seconds < 30.0
    names = {m.name for m in result.metrics}
    for geom in geodesic_chain_geometries():
        for metric in ("x_shortfall", "chain_dist", "nullity"):
            assert f"{metric}[{geom.name}]" in names


def test_run_suite_selection_has_no_budget():
    report = run_suite(VerifyConfig(only="horocycle", threads=2, time_budget=1e-9))
    assert report.budget is None
    assert report.passed
    text = format_report(report)
    assert text.startswith("PASS  horocycle  (")
    assert "1/1 checks passed" in text


def test_format_report_marks_failures_and_budget():
    failed = CheckResult("broken", [Metric("gap", 1.0, 1e-8)], seconds=0.5)
    report = SuiteReport([failed], seconds=2.0, budget=1.0)
    assert report.over_budget
    text = format_report(report)
    assert text.splitlines()[0] == "FAIL  broken  (0.50 s)"
    assert "over the 1 s budget" in text
    assert text.rstrip().endswith("0/1 checks passed in 2.0 s (over the 1 s budget)")


def test_rk4_order_is_four():
    assert 3.7 <= rk4_order() <= 4.3


def test_float_value_and_fd_partial():
    tree = parse("x*p^3 - sin(y)")

    def value(x, y, p):
        return float_value(tree, x, y, p)

    assert value(2.0, 0.0, 1.5) == pytest.approx(6.75)
    # ∂x ∂p² of x p³ is 6p
    assert fd_partial(value, (0.3, 0.2, 0.5), (1, 0, 2)) == pytest.approx(3.0, abs=1e-6)
    assert fd_partial(value, (0.3, 0.2, 0.5), (0, 1, 0)) == pytest.approx(-math.cos(0.2), abs=1e-9)


def test_float_value_needs_bound_parameters():
    with pytest.raises(ValueError):
        float_value(parse("a*p", parameters=["a"]), 0.0, 0.0, 1.0)


def test_parser_survives_fuzzing():
    assert parser_fuzz_crashes(inputs=10) == 0
