"""Concurrent runner for the acceptance checks.

Checks are independent and pure, so they run on worker threads, at most
``threads`` at a time.
"""

import asyncio
import logging
import time
from dataclasses import dataclass
from typing import List, Optional

from ..config.settings import VerifyConfig
from ..core.errors import UsageError
from .checks import CHECKS, Check, CheckResult

logger = logging.getLogger(__name__)


@dataclass
class SuiteReport:
    results: List[CheckResult]
    seconds: float
    budget: Optional[float] = None

    @property
    def over_budget(self) -> bool:
        return self.budget is not None and self.seconds > self.budget

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results) and not self.over_budget


def select_checks(only: Optional[str] = None) -> List[Check]:
    """Checks whose name contains any comma-separated pattern of ``only``, in registration order.

    Raises:
        UsageError: no check matches.
    """
    names = list(CHECKS.entries)
    if only:
        patterns = [s.strip() for s in only.split(",") if s.strip()]
        names = [n for n in names if any(p in n for p in patterns)]
    if not names:
        raise UsageError(f"--only {only!r} matches no check (known: {', '.join(CHECKS.entries)})")
    return [CHECKS.get(n) for n in names]


def run_check(check: Check, scale: float = 1.0) -> CheckResult:
    """Run one check, turning any exception into a failed result."""
    start = time.perf_counter()
    try:
        result = check.run(scale)
    except Exception as e:
        logger.error(f"check {check.name} raised {type(e).__name__}: {e}")
        result = CheckResult(check.name, error=f"{type(e).__name__}: {e}")
    result.seconds = time.perf_counter() - start
    verdict = "pass" if result.passed else "FAIL"
    logger.info(f"check {check.name}: {verdict} in {result.seconds:.2f}s")
    return result


async def run_checks(checks: List[Check], config: VerifyConfig) -> List[CheckResult]:
    semaphore = asyncio.Semaphore(config.threads)

    async def guarded(check: Check) -> CheckResult:
        async with semaphore:
            return await asyncio.to_thread(run_check, check, config.tol_scale)

    return list(await asyncio.gather(*(guarded(c) for c in checks)))


def run_suite(config: Optional[VerifyConfig] = None) -> SuiteReport:
    """Run the selected checks; the time budget applies to full runs only."""
    config = config or VerifyConfig()
    checks = select_checks(config.only)
    start = time.perf_counter()
    results = asyncio.run(run_checks(checks, config))
    elapsed = time.perf_counter() - start
    budget = None if config.only else config.time_budget
    return SuiteReport(results, elapsed, budget)


def format_report(report: SuiteReport) -> str:
    """Pass/fail table: one header line per check, one line per metric."""
    lines = []
    for result in report.results:
        status = "PASS" if result.passed else "FAIL"
        lines.append(f"{status}  {result.name}  ({result.seconds:.2f} s)")
        if result.error:
            lines.append(f"      error: {result.error}")
        for m in result.metrics:
            mark = "ok" if m.passed else "FAIL"
            lines.append(f"      {m.name:<34} {m.value:>12.4e}  {m.bound:<14} {mark}")
    passed = sum(r.passed for r in report.results)
    summary = f"{passed}/{len(report.results)} checks passed in {report.seconds:.1f} s"
    if report.over_budget:
        summary += f" (over the {report.budget:.0f} s budget)"
    lines.append(summary)
    return "\n".join(lines) + "\n"
