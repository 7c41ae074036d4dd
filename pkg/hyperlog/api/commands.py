"""
Command handlers: check, root and sweep
"""

import logging
import time
from pathlib import Path
from typing import Optional

from hyperlog.core.errors import UsageError
from hyperlog.models import (
    CheckDocument,
    PhiExponents,
    ReportStatus,
    RootReport,
    RunSettings,
    SweepDocument,
    ZeroBalancedPair,
)
from hyperlog.services.analysis import (
    beta_root_solution,
    gamma_root_solution,
    threshold_predicate,
    x0_root_solution,
)
from hyperlog.services.hyp2f1 import logistic_split
from hyperlog.services.logtype import g_fn
from hyperlog.services.suites import verification_service
from hyperlog.services.sweeps import run_sweep

logger = logging.getLogger(__name__)

ROOT_NAMES = ("gamma", "x0", "beta")
GAMMA_TOL = 1e-13
X0_TOL = 1e-14
BETA_TOL = 1e-13


def cmd_check(check_id: str, settings: RunSettings) -> CheckDocument:
    """
    Run one check, or every check for check_id == "all"

    Args:
        check_id: Registered check identifier or "all"
        settings: Merged run settings

    Returns:
        CheckDocument with one report per check
    """
    if check_id == "all":
        reports = verification_service.run_all(settings)
    else:
        reports = [verification_service.run(check_id, settings)]
    return CheckDocument.from_reports(reports)


def _elapsed_ms(start: float, settings: RunSettings) -> int:
    return int(round((time.perf_counter() - start) * 1000)) if settings.timing else 0


def cmd_root(name: str, settings: RunSettings) -> RootReport:
    """
    Solve a named root

    gamma needs a pair with cd <= 1 (default c = d = 1); beta takes a pair
    and exponents (default c = d = a = b = 1); x0 takes no parameters.
    """
    start = time.perf_counter()
    pair = settings.pair_override() or ZeroBalancedPair(c=1.0, d=1.0)
    logger.info("Solving root %s", name)
    if name == "gamma":
        solution = gamma_root_solution(pair, GAMMA_TOL)
        return RootReport(
            name=name,
            value=solution.value,
            params=pair.key(),
            tolerance=GAMMA_TOL,
            residual=solution.residual,
            bracket=[solution.lo, solution.hi],
            iterations=solution.iterations,
            diagnostics={"g_half": g_fn(pair, 0.5)},
            runtime_ms=_elapsed_ms(start, settings),
        )
    if name == "x0":
        solution = x0_root_solution(X0_TOL)
        return RootReport(
            name=name,
            value=solution.value,
            tolerance=X0_TOL,
            residual=solution.residual,
            bracket=[solution.lo, solution.hi],
            iterations=solution.iterations,
            runtime_ms=_elapsed_ms(start, settings),
        )
    if name == "beta":
        e = settings.exponents_override() or PhiExponents(a=1.0, b=1.0)
        solution = beta_root_solution(pair, e, BETA_TOL)
        return RootReport(
            name=name,
            value=solution.value,
            params={**pair.key(), **e.key()},
            tolerance=BETA_TOL,
            residual=solution.residual,
            # the solver brackets the logit of beta
            bracket=[logistic_split(solution.lo)[0], logistic_split(solution.hi)[0]],
            iterations=solution.iterations,
            diagnostics={"g_half": g_fn(pair, 0.5), "prediction": threshold_predicate(pair).value},
            runtime_ms=_elapsed_ms(start, settings),
        )
    raise UsageError(f"Unknown root {name!r}; known roots: {', '.join(ROOT_NAMES)}")


def cmd_sweep(name: str, settings: RunSettings, out: Optional[Path] = None) -> SweepDocument:
    """Evaluate a named sweep and write its rows to out as CSV"""
    document, _ = run_sweep(name, settings, out)
    return document


def exit_code(document) -> int:
    """0 unless a check document carries a failing report"""
    if isinstance(document, CheckDocument) and document.status is ReportStatus.FAIL:
        return 1
    return 0


__all__ = ["cmd_check", "cmd_root", "cmd_sweep", "exit_code", "ROOT_NAMES"]
