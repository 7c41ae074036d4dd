"""
Margin bookkeeping and report assembly
"""

import heapq
import math
from functools import reduce
from typing import Any, Dict, Iterable, List, Optional

from hyperlog.core.config import MAX_REPORTED_VIOLATIONS
from hyperlog.models import (
    ConcavityVerdict,
    GridSpec,
    MonotonicityVerdict,
    ReportStatus,
    VerificationReport,
    Violation,
)


class MarginLedger:
    """
    Collects observations of a claim lhs <= rhs

    The effective margin of an observation is rhs - lhs + allowance, where
    allowance carries the error estimates of the evaluations involved.
    Observations whose effective margin is below -tol become violations;
    only the MAX_REPORTED_VIOLATIONS smallest gaps are kept.
    """

    def __init__(self, tol: float, max_violations: int = MAX_REPORTED_VIOLATIONS):
        self.tol = tol
        self.max_violations = max_violations
        self.worst_margin = math.inf
        self.worst_point: Dict[str, float] = {}
        self.n_points = 0
        self.n_violations = 0
        self._heap: List[tuple] = []

    def add(self, point: Dict[str, float], lhs: float, rhs: float, allowance: float = 0.0) -> float:
        margin = rhs - lhs + allowance
        if math.isnan(margin):
            margin = -math.inf
        self.n_points += 1
        if margin < self.worst_margin:
            self.worst_margin = margin
            self.worst_point = dict(point)
        if margin < -self.tol:
            self.n_violations += 1
            violation = Violation(point={k: float(v) for k, v in point.items()}, lhs=lhs, rhs=rhs, gap=rhs - lhs)
            key = violation.sort_key()
            # max-heap on the sort key via negated gap
            entry = (-key[0], tuple((k, -v) for k, v in key[1]), self.n_violations, violation)
            if len(self._heap) < self.max_violations:
                heapq.heappush(self._heap, entry)
            elif entry > self._heap[0]:
                heapq.heapreplace(self._heap, entry)
        return margin

    def add_monotone(self, point: Dict[str, float], verdict: MonotonicityVerdict, axis: str) -> float:
        """Record the worst consecutive difference of a monotonicity claim"""
        where = dict(point)
        if verdict.witness is not None:
            where[axis] = verdict.witness
        return self.add(where, -verdict.worst_violation, 0.0, verdict.error_allowance)

    def add_concave(self, point: Dict[str, float], verdict: ConcavityVerdict, axis: str) -> float:
        """Record a concavity claim: largest second difference must not exceed slack"""
        where = dict(point)
        if verdict.witness is not None:
            where[axis] = verdict.witness
        return self.add(where, verdict.concave_excess, 0.0)

    def add_neither(self, point: Dict[str, float], verdict: ConcavityVerdict, axis: str) -> float:
        """Record a claim that f is neither convex nor concave"""
        where = dict(point)
        if verdict.witness is not None:
            where[axis] = verdict.witness
        return self.add(where, 2.0 * self.tol, min(verdict.concave_excess, verdict.convex_excess))

    def add_expectation(self, point: Dict[str, float], holds: bool) -> float:
        """Record a yes/no expectation; a miss counts as a violation of size 1"""
        return self.add(point, 0.0 if holds else 1.0, 0.0)

    @property
    def violations(self) -> List[Violation]:
        return sorted((entry[-1] for entry in self._heap), key=lambda v: v.sort_key())

    @property
    def failed(self) -> bool:
        return self.n_violations > 0

    def report(
        self,
        theorem_id: str,
        claim: str = "",
        params: Optional[Dict[str, Any]] = None,
        grids: Optional[Dict[str, GridSpec]] = None,
        exploratory: bool = False,
        details: Optional[Dict[str, Any]] = None,
        notes: Optional[List[str]] = None,
        runtime_ms: int = 0,
    ) -> VerificationReport:
        if exploratory:
            status = ReportStatus.EXPLORATORY
        else:
            status = ReportStatus.FAIL if self.failed else ReportStatus.PASS
        details = dict(details or {})
        if self.worst_point:
            details.setdefault("worst_point", self.worst_point)
        if self.n_violations > len(self._heap):
            details.setdefault("violations_total", self.n_violations)
        return VerificationReport(
            theorem_id=theorem_id,
            claim=claim,
            params=params or {},
            grids=grids or {},
            tolerance=self.tol,
            status=status,
            worst_margin=self.worst_margin if math.isfinite(self.worst_margin) else _sentinel(self.worst_margin),
            n_points=self.n_points,
            violations=self.violations,
            details=details,
            notes=notes or [],
            runtime_ms=runtime_ms,
        )


def _sentinel(margin: float) -> float:
    """JSON has no infinities: an empty ledger reports 0, a NaN observation a huge negative margin"""
    return 0.0 if margin > 0 else -1e308


def _merge_status(a: ReportStatus, b: ReportStatus) -> ReportStatus:
    for status in (ReportStatus.FAIL, ReportStatus.EXPLORATORY):
        if status in (a, b):
            return status
    return ReportStatus.PASS


def merge_maps(a: Dict[str, Any], b: Dict[str, Any]) -> Dict[str, Any]:
    """Union of two mappings; a conflicting key keeps the value with the smaller repr"""
    merged = dict(a)
    for key, value in b.items():
        if key not in merged or repr(value) < repr(merged[key]):
            merged[key] = value
    return dict(sorted(merged.items()))


def merge_two(a: VerificationReport, b: VerificationReport) -> VerificationReport:
    """
    Merge partial reports of one check: minimum worst margin, union of
    violations sorted by gap then point, summed counts and runtimes.
    Associative and independent of argument order.
    """
    violations = sorted(a.violations + b.violations, key=lambda v: v.sort_key())
    details = merge_maps(a.details, b.details)
    worst = min((a, b), key=lambda r: (r.worst_margin, repr(r.details.get("worst_point"))))
    if "worst_point" in worst.details:
        details["worst_point"] = worst.details["worst_point"]
    return VerificationReport(
        theorem_id=min(a.theorem_id, b.theorem_id),
        claim=min(a.claim, b.claim) if a.claim and b.claim else a.claim or b.claim,
        params=merge_maps(a.params, b.params),
        grids=merge_maps(a.grids, b.grids),
        tolerance=max(a.tolerance, b.tolerance),
        status=_merge_status(a.status, b.status),
        worst_margin=min(a.worst_margin, b.worst_margin),
        n_points=a.n_points + b.n_points,
        violations=violations[:MAX_REPORTED_VIOLATIONS],
        details=details,
        notes=sorted(set(a.notes) | set(b.notes)),
        runtime_ms=a.runtime_ms + b.runtime_ms,
    )


def merge_reports(reports: Iterable[VerificationReport]) -> VerificationReport:
    reports = list(reports)
    if not reports:
        raise ValueError("merge_reports needs at least one report")
    return reduce(merge_two, reports)
