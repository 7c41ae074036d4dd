import math

import numpy as np
import pytest

from hyperlog.core.errors import BracketError, DomainError, EvaluationError
from hyperlog.models import ConcavityKind, GridSpec, MonotoneKind, PhiExponents, ZeroBalancedPair
from hyperlog.services.analysis import (
    HConvexity,
    Region,
    ThresholdPrediction,
    beta_root,
    beta_root_solution,
    bracket_root,
    check_concavity,
    check_monotone,
    gamma_root,
    gamma_root_solution,
    inflection_points,
    ratio_coeff_gap,
    solve_bracket,
    power_ratio_prediction,
    ssthm_classify,
    threshold_predicate,
    x0_root,
)
from hyperlog.services.logtype import g_fn


def linear(lo, hi, n=101):
    return GridSpec(lo=lo, hi=hi, n_points=n)


class TestRoots:
    def test_bracket_root(self):
        assert bracket_root(lambda x: x * x - 2.0, 0.0, 2.0) == pytest.approx(math.sqrt(2.0), abs=1e-12)

    def test_solution_carries_bracket(self):
        solution = solve_bracket(math.cos, 0.0, 3.0, tol=1e-14)
        assert solution.value == pytest.approx(math.pi / 2, abs=1e-12)
        assert solution.lo <= solution.value <= solution.hi
        assert solution.iterations > 0

    def test_no_sign_change(self):
        with pytest.raises(BracketError) as excinfo:
            solve_bracket(lambda x: x * x + 1.0, -1.0, 1.0)
        assert excinfo.value.f_lo == 2.0
        assert excinfo.value.f_hi == 2.0

    def test_non_finite_value(self):
        with pytest.raises(EvaluationError):
            solve_bracket(lambda x: math.inf, 0.0, 1.0)

    def test_tolerance_must_be_positive(self):
        with pytest.raises(DomainError):
            solve_bracket(math.sin, -1.0, 1.0, tol=0.0)

    def test_gamma_root_for_unit_pair(self, unit_pair):
        # g(s/(1+s)) = log(1+s)
        assert gamma_root(unit_pair) == pytest.approx(math.e - 1.0, abs=1e-9)
        solution = gamma_root_solution(unit_pair)
        assert abs(solution.residual) <= 1e-12

    def test_gamma_root_needs_product_at_most_one(self):
        with pytest.raises(DomainError):
            gamma_root(ZeroBalancedPair(c=2.0, d=2.0))

    def test_gamma_root_small_pair(self):
        pair = ZeroBalancedPair(c=0.5, d=0.5)
        root = gamma_root(pair)
        assert root > 1.0
        assert g_fn(pair, root / (1.0 + root)) == pytest.approx(1.0, abs=1e-10)

    def test_x0(self):
        assert abs(x0_root() - 2.4555) <= 5e-4

    def test_beta_root_for_unit_pair(self, unit_pair):
        assert beta_root(unit_pair, PhiExponents(a=1.0, b=1.0)) == pytest.approx(1.0 - 1.0 / math.e, abs=1e-9)

    def test_beta_root_solution_value_is_in_unit_interval(self, unit_pair, exponents):
        solution = beta_root_solution(unit_pair, exponents)
        assert 0.0 < solution.value < 1.0
        # bracket is in logit form
        logit = math.log(solution.value / (1.0 - solution.value))
        assert solution.lo - 1e-9 <= logit <= solution.hi + 1e-9


class TestThreshold:
    @pytest.mark.parametrize(
        "c, d, expected",
        [
            (1.0, 1.0, ThresholdPrediction.PREDICT_GT),
            (6.0, 6.0, ThresholdPrediction.PREDICT_LT),
            (2.15, 2.15, ThresholdPrediction.INCONCLUSIVE),
        ],
    )
    def test_predicate(self, c, d, expected):
        assert threshold_predicate(ZeroBalancedPair(c=c, d=d)) is expected

    @pytest.mark.parametrize("c, d", [(0.5, 0.5), (1.0, 3.0), (4.0, 6.0)])
    def test_ratio_coefficient_gap_vanishes(self, c, d):
        assert abs(ratio_coeff_gap(ZeroBalancedPair(c=c, d=d))) <= 1e-12


class TestMonotone:
    def test_increasing(self):
        verdict = check_monotone(math.exp, linear(0.0, 1.0), MonotoneKind.INCREASING)
        assert verdict.kind is MonotoneKind.INCREASING
        assert verdict.holds
        assert verdict.witness is None
        assert verdict.values_at_ends == [1.0, pytest.approx(math.e)]

    def test_opposite_direction(self):
        verdict = check_monotone(lambda x: -x, linear(0.0, 1.0), "increasing")
        assert verdict.kind is MonotoneKind.DECREASING
        assert not verdict.holds
        assert verdict.worst_violation < 0

    def test_non_monotone_has_witness(self):
        verdict = check_monotone(math.sin, linear(0.0, 2.0 * math.pi), MonotoneKind.INCREASING)
        assert verdict.kind is MonotoneKind.NON_MONOTONE
        assert math.pi / 2 - 0.1 <= verdict.witness <= 3 * math.pi / 2 + 0.1

    def test_error_estimate_widens_the_check(self):
        grid = linear(0.0, 1.0, 101)
        assert not check_monotone(lambda x: -x, grid, MonotoneKind.INCREASING).holds
        widened = check_monotone(lambda x: -x, grid, MonotoneKind.INCREASING, error=lambda x: 1.0)
        assert widened.holds
        assert widened.error_allowance == 2.0

    def test_rejects_non_monotone_direction(self):
        with pytest.raises(DomainError):
            check_monotone(math.exp, linear(0.0, 1.0), MonotoneKind.NON_MONOTONE)

    def test_non_finite_value_raises(self):
        with pytest.raises(EvaluationError) as excinfo:
            check_monotone(lambda x: 1.0 / x if x > 0.5 else math.nan, linear(0.0, 1.0), MonotoneKind.DECREASING)
        assert excinfo.value.point == 0.0


class TestConcavity:
    def test_concave(self):
        assert check_concavity(lambda x: -x * x, linear(-1.0, 1.0)).kind is ConcavityKind.CONCAVE

    def test_convex(self):
        assert check_concavity(math.exp, linear(-1.0, 1.0)).kind is ConcavityKind.CONVEX

    def test_neither_has_witness_and_inflection(self):
        verdict = check_concavity(lambda x: x**3, linear(-1.0, 1.0, 100))
        assert verdict.kind is ConcavityKind.NEITHER
        assert verdict.witness > 0
        assert verdict.inflections == [pytest.approx(0.0, abs=0.05)]

    def test_inflection_points(self):
        points = inflection_points(math.sin, linear(0.5, 6.0, 200))
        assert points == [pytest.approx(math.pi, abs=0.05)]

    def test_second_differences_on_log_grid(self):
        grid = GridSpec(lo=0.1, hi=10.0, n_points=50, spacing="log")
        assert check_concavity(np.log, grid).kind is ConcavityKind.CONCAVE


class TestPowerRatioClassification:
    @pytest.mark.parametrize(
        "convexity, c, region, expected",
        [
            (HConvexity.CONVEX, 0.5, Region.X_IN_01, MonotoneKind.INCREASING),
            (HConvexity.CONVEX, 2.0, Region.X_IN_01, MonotoneKind.DECREASING),
            (HConvexity.CONVEX, 2.0, Region.X_GT_1, MonotoneKind.INCREASING),
            (HConvexity.CONVEX, -1.0, Region.X_IN_01, MonotoneKind.DECREASING),
            (HConvexity.CONCAVE, 0.5, Region.X_IN_01, MonotoneKind.DECREASING),
            (HConvexity.CONCAVE, 0.5, Region.X_GT_1, MonotoneKind.INCREASING),
        ],
    )
    def test_classification(self, convexity, c, region, expected):
        assert power_ratio_prediction(convexity, c, region) is expected

    def test_classification_agrees_with_exp(self):
        # f = exp has convex h(t) = e^t
        c = 0.5
        grid = linear(0.01, 0.99)
        predicted = power_ratio_prediction("convex", c, "x_in_01")
        verdict = check_monotone(lambda x: math.exp(x**c) / math.exp(x) ** c, grid, predicted)
        assert verdict.holds

    @pytest.mark.parametrize("c", [0.0, 1.0])
    def test_degenerate_exponents(self, c):
        with pytest.raises(DomainError):
            power_ratio_prediction(HConvexity.CONVEX, c, Region.X_IN_01)

    def test_theorem_label_name(self):
        assert ssthm_classify is power_ratio_prediction
        assert ssthm_classify(HConvexity.CONVEX, 0.5, Region.X_IN_01) is MonotoneKind.INCREASING
