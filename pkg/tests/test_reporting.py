import itertools

import pytest
from pydantic import ValidationError

from hyperlog.models import ReportStatus, VerificationReport
from hyperlog.services.reporting import MarginLedger, merge_maps, merge_reports


def ledger_report(check_id, observations, tol=1e-9, **kwargs):
    ledger = MarginLedger(tol)
    for point, lhs, rhs in observations:
        ledger.add(point, lhs, rhs)
    return ledger.report(check_id, **kwargs)


class TestMarginLedger:
    def test_pass(self):
        ledger = MarginLedger(1e-9)
        assert ledger.add({"x": 0.1}, 1.0, 2.0) == 1.0
        ledger.add({"x": 0.2}, 1.0, 1.0 - 1e-12)
        report = ledger.report("demo", claim="lhs <= rhs")
        assert report.status is ReportStatus.PASS
        assert report.worst_margin == pytest.approx(-1e-12)
        assert report.n_points == 2
        assert report.violations == []
        assert report.details["worst_point"] == {"x": 0.2}

    def test_fail_records_violation(self):
        ledger = MarginLedger(1e-9)
        ledger.add({"x": 0.1}, 2.0, 1.0)
        report = ledger.report("demo")
        assert report.status is ReportStatus.FAIL
        assert report.violations[0].gap == -1.0
        assert report.violations[0].point == {"x": 0.1}

    def test_allowance_absorbs_error(self):
        ledger = MarginLedger(1e-9)
        ledger.add({"x": 0.5}, 1.0 + 1e-6, 1.0, allowance=1e-5)
        assert not ledger.failed

    def test_nan_is_a_violation(self):
        ledger = MarginLedger(1e-9)
        ledger.add({"x": 0.5}, float("nan"), 1.0)
        report = ledger.report("demo")
        assert report.status is ReportStatus.FAIL
        assert report.worst_margin == -1e308

    def test_violation_cap_keeps_the_worst(self):
        ledger = MarginLedger(1e-9, max_violations=3)
        for i in range(10):
            ledger.add({"i": float(i)}, float(i + 1), 0.0)
        report = ledger.report("demo")
        assert [v.gap for v in report.violations] == [-10.0, -9.0, -8.0]
        assert report.details["violations_total"] == 10

    def test_exploratory_never_fails(self):
        ledger = MarginLedger(1e-9)
        ledger.add({}, 2.0, 1.0)
        report = ledger.report("demo", exploratory=True)
        assert report.status is ReportStatus.EXPLORATORY
        assert report.passed

    def test_empty_ledger(self):
        report = MarginLedger(1e-9).report("demo")
        assert report.status is ReportStatus.PASS
        assert report.worst_margin == 0.0

    def test_expectation(self):
        ledger = MarginLedger(1e-9)
        ledger.add_expectation({"x": 1.0}, True)
        assert not ledger.failed
        ledger.add_expectation({"x": 2.0}, False)
        assert ledger.failed


def test_fail_without_violation_is_rejected():
    with pytest.raises(ValidationError):
        VerificationReport(theorem_id="x", tolerance=1e-9, status=ReportStatus.FAIL, worst_margin=-1.0)


def test_pass_below_tolerance_is_rejected():
    with pytest.raises(ValidationError):
        VerificationReport(theorem_id="x", tolerance=1e-9, status=ReportStatus.PASS, worst_margin=-1.0)


class TestMerge:
    @pytest.fixture
    def parts(self):
        return [
            ledger_report("demo", [({"x": 0.1}, 1.0, 2.0)], details={"a": 1}),
            ledger_report("demo", [({"x": 0.2}, 3.0, 2.0), ({"x": 0.3}, 1.0, 1.5)], details={"b": 2}),
            ledger_report("demo", [({"x": 0.4}, 5.0, 2.0)], notes=["override"]),
        ]

    def test_merge_is_order_independent(self, parts):
        dumps = {merge_reports(order).model_dump_json() for order in itertools.permutations(parts)}
        assert len(dumps) == 1

    def test_merge_is_associative(self, parts):
        a, b, c = parts
        left = merge_reports([merge_reports([a, b]), c])
        right = merge_reports([a, merge_reports([b, c])])
        assert left == right

    def test_merged_contents(self, parts):
        merged = merge_reports(parts)
        assert merged.status is ReportStatus.FAIL
        assert merged.worst_margin == -3.0
        assert merged.n_points == 4
        assert [v.gap for v in merged.violations] == [-3.0, -1.0]
        assert merged.details["a"] == 1 and merged.details["b"] == 2
        assert merged.details["worst_point"] == {"x": 0.4}
        assert merged.notes == ["override"]

    def test_exploratory_wins_over_pass(self):
        passing = ledger_report("demo", [({}, 0.0, 1.0)])
        exploratory = ledger_report("demo", [({}, 0.0, 1.0)], exploratory=True)
        assert merge_reports([passing, exploratory]).status is ReportStatus.EXPLORATORY

    def test_merge_needs_a_report(self):
        with pytest.raises(ValueError):
            merge_reports([])


def test_merge_maps_is_symmetric():
    a = {"k": 2, "x": 1}
    b = {"k": 10, "y": 3}
    assert merge_maps(a, b) == merge_maps(b, a) == {"k": 10, "x": 1, "y": 3}
