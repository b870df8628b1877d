"""Acceptance suite."""

from .checks import CHECKS, Check, CheckResult, Metric
from .suite import SuiteReport, format_report, run_check, run_suite, select_checks

__all__ = [
    "CHECKS",
    "Check",
    "CheckResult",
    "Metric",
    "SuiteReport",
    "format_report",
    "run_check",
    "run_suite",
    "select_checks",
]
