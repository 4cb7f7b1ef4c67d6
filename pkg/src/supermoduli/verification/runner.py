"""Run registered checks concurrently and assemble an ordered report."""

import asyncio
import time
from dataclasses import dataclass

from supermoduli import __version__
from supermoduli.config import get_settings
from supermoduli.errors import check_ramond_count
from supermoduli.logging import get_logger
from supermoduli.models.report import CheckResult, CheckStatus, ReportDocument
from supermoduli.susy.form import SusyForm
from supermoduli.verification.registry import CheckContext, CheckSpec, get_suite

logger = get_logger(__name__)


@dataclass(frozen=True)
class SuiteRequest:
    n_r: list[int]
    check_ids: list[str] | None = None
    window: int | None = None
    susy: SusyForm | None = None


def run_check(spec: CheckSpec, ctx: CheckContext) -> CheckResult:
    """Run one check, turning any error into a failing result."""
    settings = get_settings()
    start = time.perf_counter()
    try:
        outcome = spec.func(ctx)
        status = CheckStatus.PASS if outcome.passed else CheckStatus.FAIL
        failure_class = None if outcome.passed else "mismatch"
        computed, expected = str(outcome.computed), str(outcome.expected)
    except Exception as e:
        logger.error("Check raised", check_id=spec.check_id, n_r=ctx.n_r, error=str(e))
        status, failure_class = CheckStatus.FAIL, type(e).__name__
        computed, expected = str(e), ""
    elapsed = time.perf_counter() - start
    logger.info("Check finished", check_id=spec.check_id, n_r=ctx.n_r, status=status.value, seconds=round(elapsed, 3))
    return CheckResult(
        check_id=spec.check_id,
        n_r=ctx.n_r,
        anchor=spec.anchor,
        status=status,
        failure_class=failure_class,
        computed=computed,
        expected=expected,
        provenance=spec.provenance,
        wall_time=round(elapsed, 3) if settings.report_timings else None,
    )


def plan(request: SuiteRequest) -> list[tuple[CheckSpec, CheckContext]]:
    """Jobs in report order: registration order, then increasing n_R.

    Raises:
        InvalidRamondCountError: If an n_R value is odd or below 4
        KeyError: If a requested check is not registered
    """
    counts = sorted({check_ramond_count(n) for n in request.n_r})
    jobs = []
    for spec in get_suite().select(request.check_ids):
        if not spec.per_nr:
            jobs.append((spec, CheckContext(None, request.window, request.susy)))
            continue
        for n_r in counts:
            if n_r >= spec.min_nr:
                jobs.append((spec, CheckContext(n_r, request.window, request.susy)))
    return jobs


async def run_suite(request: SuiteRequest) -> ReportDocument:
    """Run the requested checks, at most ``max_workers`` at a time."""
    settings = get_settings()
    jobs = plan(request)
    semaphore = asyncio.Semaphore(settings.max_workers)

    async def bounded(spec: CheckSpec, ctx: CheckContext) -> CheckResult:
        async with semaphore:
            return await asyncio.to_thread(run_check, spec, ctx)

    logger.info("Running suite", jobs=len(jobs), n_r=request.n_r, workers=settings.max_workers)
    results = await asyncio.gather(*(bounded(spec, ctx) for spec, ctx in jobs))
    report = ReportDocument(tool_version=__version__, n_r=sorted(set(request.n_r)), results=list(results))
    logger.info("Suite finished", passed=report.summary.passed, failed=report.summary.failed)
    return report
