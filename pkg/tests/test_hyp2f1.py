import math

import numpy as np
import pytest
import scipy.special as sc
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hyperlog.core.config import NEAR_ONE_X
from hyperlog.core.errors import ConvergenceError, DomainError
from hyperlog.models import EvalMethod, HypParams
from hyperlog.services import hyp2f1
from hyperlog.core.calibration import near_one_calibration
from hyperlog.services.hyp2f1 import (
    check_unit_interval,
    clear_caches,
    f21,
    f21_at_1,
    f21_at_logit,
    f21_derivative,
    f21_grid,
    hyp2f1_series,
    logistic_split,
    pochhammer,
    ratio_coeffs,
    series_coeffs,
)

param = st.floats(min_value=0.1, max_value=3.0)


@given(a=param, b=param, c=param, x=st.floats(min_value=0.0, max_value=0.95))
@settings(max_examples=150, deadline=None)
def test_f21_matches_scipy(a, b, c, x):
    assume(abs(a + b - c) > 1e-3)
    result = f21(HypParams(a=a, b=b, c=c), x)
    assert result.value == pytest.approx(sc.hyp2f1(a, b, c, x), rel=1e-9)
    assert result.abs_err_estimate >= 0.0


def test_routing():
    assert f21(HypParams(a=0.5, b=0.5, c=1.0), 0.3).method is EvalMethod.SERIES
    assert f21(HypParams(a=0.5, b=0.5, c=1.0), 1.0 - 1e-6).method is EvalMethod.NEAR1_ASYMPTOTIC
    assert f21(HypParams(a=1.5, b=1.2, c=2.0), 0.7).method is EvalMethod.EULER_TRANSFORMED
    assert f21(HypParams(a=1.5, b=1.2, c=2.0), 0.4).method is EvalMethod.SERIES
    assert f21(HypParams(a=0.5, b=0.5, c=2.0), 0.9).method is EvalMethod.SERIES


def test_zero_balanced_closed_form(unit_pair):
    p = unit_pair.params
    for x in (1e-6, 0.1, 0.5, 0.9, 0.999):
        assert x * f21(p, x).value == pytest.approx(-math.log1p(-x), rel=1e-11)


def test_near_one_value_within_error_estimate(unit_pair):
    x = 1.0 - 1e-6
    result = f21(unit_pair.params, x)
    exact = -math.log1p(-x) / x
    assert abs(result.value - exact) <= result.abs_err_estimate


def test_near_one_switch_is_continuous():
    p = HypParams(a=0.5, b=0.5, c=1.0)
    below = f21(p, NEAR_ONE_X)
    above = f21(p, float(np.nextafter(NEAR_ONE_X, 1.0)))
    assert below.method is EvalMethod.SERIES
    assert above.method is EvalMethod.NEAR1_ASYMPTOTIC
    assert abs(below.value - above.value) <= 10.0 * (below.abs_err_estimate + above.abs_err_estimate) + 1e-12


def test_logit_evaluation_reaches_past_double_one(unit_pair):
    # x = e^50/(1+e^50) rounds to 1, but log(1/(1-x)) = log(1 + e^50) is still finite
    result = f21_at_logit(unit_pair.params, 50.0)
    assert result.method is EvalMethod.NEAR1_ASYMPTOTIC
    assert result.value == pytest.approx(50.0, rel=1e-12)
    assert f21_at_logit(unit_pair.params, 0.0).value == pytest.approx(f21(unit_pair.params, 0.5).value, rel=1e-14)


def test_logit_rejects_unit_argument_for_other_parameters():
    with pytest.raises(DomainError):
        f21_at_logit(HypParams(a=0.5, b=0.5, c=2.0), 50.0)


def test_logistic_split():
    x, one_minus_x = logistic_split(40.0)
    assert x == 1.0
    assert one_minus_x == pytest.approx(math.exp(-40.0), rel=1e-12)
    x, one_minus_x = logistic_split(-3.0)
    assert x + one_minus_x == pytest.approx(1.0)


def test_euler_identity_on_series():
    a, b, c, x = 2.0, 3.0, 4.0, 0.8
    direct = hyp2f1_series(a, b, c, x).value
    transformed = (1.0 - x) ** (c - a - b) * hyp2f1_series(c - a, c - b, c, x).value
    assert direct == pytest.approx(transformed, rel=1e-10)


def test_series_accepts_negative_parameters():
    # F(-2, b; c; x) is a polynomial of degree 2
    a, b, c, x = -2.0, 1.5, 2.5, 0.4
    expected = 1.0 + a * b / c * x + a * (a + 1) * b * (b + 1) / (c * (c + 1) * 2.0) * x**2
    assert hyp2f1_series(a, b, c, x).value == pytest.approx(expected, rel=1e-13)


def test_series_rejects_non_positive_integer_c():
    with pytest.raises(DomainError):
        hyp2f1_series(1.0, 1.0, -2.0, 0.5)


def test_series_cap_raises_convergence_error(monkeypatch):
    monkeypatch.setattr(hyp2f1, "SERIES_MAX_TERMS", 100)
    with pytest.raises(ConvergenceError) as excinfo:
        hyp2f1_series(1.0, 1.0, 2.0, 0.999)
    assert excinfo.value.n_terms >= 100
    assert excinfo.value.partial_value > 1.0
    assert excinfo.value.x == 0.999


@pytest.mark.parametrize("x", [1.0, -0.1, float("nan"), 1.5])
def test_argument_outside_unit_interval(x):
    with pytest.raises(DomainError):
        check_unit_interval(x)
    with pytest.raises(DomainError):
        f21(HypParams(a=1.0, b=1.0, c=2.0), x)


def test_gauss_value_at_one():
    assert f21_at_1(HypParams(a=1.0, b=1.0, c=3.0)) == pytest.approx(2.0, rel=1e-13)
    assert f21_at_1(HypParams(a=0.5, b=0.5, c=2.0)) == pytest.approx(sc.hyp2f1(0.5, 0.5, 2.0, 1.0), rel=1e-12)
    with pytest.raises(DomainError):
        f21_at_1(HypParams(a=1.0, b=1.0, c=2.0))


def test_derivative():
    p = HypParams(a=0.5, b=0.7, c=2.5)
    expected = 0.5 * 0.7 / 2.5 * sc.hyp2f1(1.5, 1.7, 3.5, 0.4)
    assert f21_derivative(p, 0.4).value == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("abc", [(0.5, 0.5, 1.0), (1.0, 1.0, 2.0), (0.3, 0.8, 1.5), (1.5, 1.2, 2.0)])
def test_derivative_matches_finite_differences(abc):
    a, b, c = abc
    p = HypParams(a=a, b=b, c=c)
    step = 1e-5
    for x in np.linspace(0.05, 0.9, 12):
        central = (f21(p, x + step).value - f21(p, x - step).value) / (2.0 * step)
        assert f21_derivative(p, x).value == pytest.approx(central, abs=1e-6)


def test_pochhammer():
    assert pochhammer(3.7, 0) == 1.0
    assert pochhammer(2.0, 3) == 24.0
    assert pochhammer(0.5, 2) == 0.75
    with pytest.raises(DomainError):
        pochhammer(1.0, -1)


def test_series_coeffs():
    coeffs = series_coeffs(HypParams(a=1.0, b=1.0, c=1.0), 10)
    assert coeffs.order == 10
    assert np.allclose(coeffs.as_array(), 1.0)
    p = HypParams(a=0.5, b=1.5, c=2.0)
    coeffs = series_coeffs(p, 5)
    for n in range(6):
        assert coeffs[n] == pytest.approx(pochhammer(0.5, n) * pochhammer(1.5, n) / (pochhammer(2.0, n) * math.factorial(n)))


def test_ratio_coeffs_of_a_binomial():
    # F(a, b; b; x) = (1-x)^-a, so F'/F = a/(1-x) has every coefficient equal to a
    coeffs = ratio_coeffs(HypParams(a=0.5, b=1.0, c=1.0), 20)
    assert len(coeffs) == 21
    assert np.allclose(coeffs.as_array(), 0.5, rtol=0, atol=1e-12)


def test_ratio_coeffs_leading_terms():
    p = HypParams(a=0.7, b=1.3, c=2.0)
    coeffs = ratio_coeffs(p, 3)
    a0 = p.a * p.b / p.c
    assert coeffs[0] == pytest.approx(a0)
    assert coeffs[0] - coeffs[1] == pytest.approx(a0**2 / (p.c + 1.0))


@pytest.mark.parametrize("n", [0, -3])
def test_coefficient_order_must_be_positive(n):
    p = HypParams(a=1.0, b=1.0, c=2.0)
    with pytest.raises(DomainError):
        series_coeffs(p, n)
    with pytest.raises(DomainError):
        ratio_coeffs(p, n)


def test_f21_grid():
    p = HypParams(a=0.5, b=0.5, c=1.0)
    xs = np.linspace(0.0, 0.9, 7)
    values, errors = f21_grid(p, xs)
    assert values.shape == errors.shape == (7,)
    assert values[0] == 1.0
    assert np.all(np.diff(values) > 0)


def test_clear_caches_forgets_near_one_constants():
    p = HypParams(a=0.3, b=0.7, c=1.0)
    x = 1.0 - 1e-9
    before = f21(p, x)
    assert near_one_calibration.is_calibrated(0.3, 0.7)
    clear_caches()
    assert not near_one_calibration.is_calibrated(0.3, 0.7)
    after = f21(p, x)
    assert after.value == before.value
    assert near_one_calibration.is_calibrated(0.3, 0.7)
