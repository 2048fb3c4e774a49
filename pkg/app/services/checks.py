"""
Check results shared by every verification suite
"""
import time
import logging
from enum import Enum
from typing import Callable, List, Optional

from pydantic import BaseModel

from app.services.errors import BraidCalcError
from app.services.metrics_logger import MetricsLogger

logger = logging.getLogger(__name__)
metrics_logger = MetricsLogger()


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class CheckResult(BaseModel):
    """Outcome of one named identity"""
    name: str
    status: CheckStatus
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status != CheckStatus.FAIL


def passed(name: str) -> CheckResult:
    return CheckResult(name=name, status=CheckStatus.PASS)


def failed(name: str, detail: str) -> CheckResult:
    return CheckResult(name=name, status=CheckStatus.FAIL, detail=detail)


def skipped(name: str, reason: str) -> CheckResult:
    return CheckResult(name=name, status=CheckStatus.SKIPPED, detail=reason)


def run_check(name: str, check: Callable[[], Optional[str]], dimension: int = 0) -> CheckResult:
    """
    Run one identity check and record its timing

    Args:
        name: Identity name (a key of CHECK_DESCRIPTIONS)
        check: Callable returning None on success or a failure description
        dimension: Size of the space the identity lives on, for the metrics

    Returns:
        CheckResult; computation errors are reported as failures
    """
    start = time.perf_counter()
    try:
        problem = check()
        result = passed(name) if problem is None else failed(name, problem)
    except BraidCalcError as e:
        logger.error(f"Error while checking {name}: {str(e)}")
        result = failed(name, str(e))

    elapsed_ms = (time.perf_counter() - start) * 1000
    metrics_logger.log_check(name, result.status.value, elapsed_ms, dimension)
    if result.status == CheckStatus.FAIL:
        logger.warning(f"Check {name} failed: {result.detail}")
    else:
        logger.debug(f"Check {name} passed in {elapsed_ms:.1f} ms")
    return result


def all_passed(results: List[CheckResult]) -> bool:
    return all(r.passed for r in results)


def first_failure(results: List[CheckResult]) -> Optional[CheckResult]:
    for r in results:
        if r.status == CheckStatus.FAIL:
            return r
    return None
