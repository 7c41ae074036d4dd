import math

import pytest
import scipy.special as sc
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperlog.core.config import EULER_GAMMA
from hyperlog.core.errors import DomainError
from hyperlog.services.special_fn import beta, digamma, ln_gamma, r_constant

positive = st.floats(min_value=1e-2, max_value=60.0, allow_nan=False, allow_infinity=False)


@given(x=positive)
@settings(max_examples=200)
def test_ln_gamma_matches_scipy(x):
    assert ln_gamma(x) == pytest.approx(sc.gammaln(x), rel=1e-12, abs=1e-12)


@given(x=positive)
@settings(max_examples=200)
def test_digamma_matches_scipy(x):
    assert digamma(x) == pytest.approx(sc.digamma(x), rel=1e-12, abs=1e-12)


@given(a=st.floats(0.05, 20.0), b=st.floats(0.05, 20.0))
@settings(max_examples=100)
def test_beta_matches_scipy(a, b):
    assert beta(a, b) == pytest.approx(sc.beta(a, b), rel=1e-11)


@given(a=st.floats(0.05, 20.0), b=st.floats(0.05, 20.0))
@settings(max_examples=100)
def test_r_constant_is_symmetric(a, b):
    assert r_constant(a, b) == r_constant(b, a)


def test_known_values():
    assert ln_gamma(1.0) == 0.0
    assert ln_gamma(2.0) == 0.0
    assert ln_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), abs=1e-13)
    assert digamma(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-12)
    assert beta(0.5, 0.5) == pytest.approx(math.pi, abs=1e-12)
    assert r_constant(0.5, 0.5) == pytest.approx(math.log(16.0), abs=1e-12)
    # psi(1) = -gamma, so R(1, 1) vanishes
    assert r_constant(1.0, 1.0) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan"), float("inf")])
def test_non_positive_arguments_raise(bad):
    with pytest.raises(DomainError):
        ln_gamma(bad)
    with pytest.raises(DomainError):
        digamma(bad)
    with pytest.raises(DomainError):
        beta(1.0, bad)
    with pytest.raises(DomainError):
        r_constant(bad, 1.0)


@given(x=st.floats(min_value=1e-2, max_value=50.0))
@settings(max_examples=200)
def test_gamma_recurrence(x):
    # Gamma(x + 1) = x Gamma(x)
    scale = max(1.0, abs(ln_gamma(x + 1.0)))
    assert ln_gamma(x + 1.0) - ln_gamma(x) == pytest.approx(math.log(x), abs=1e-11 * scale)


@given(x=st.floats(min_value=0.01, max_value=0.99))
@settings(max_examples=200)
def test_gamma_reflection(x):
    # Gamma(x) Gamma(1 - x) = pi/sin(pi x)
    expected = math.log(math.pi / math.sin(math.pi * x))
    assert ln_gamma(x) + ln_gamma(1.0 - x) == pytest.approx(expected, abs=1e-11)


@pytest.mark.parametrize("x", [0.5, 0.75, 1.0, 1.4616, 2.5, 7.0, 12.3, 30.0, 50.0])
def test_digamma_is_the_derivative_of_ln_gamma(x):
    step = 1e-6
    central = (ln_gamma(x + step) - ln_gamma(x - step)) / (2.0 * step)
    assert digamma(x) == pytest.approx(central, abs=1e-5)


@given(x=st.floats(min_value=0.5, max_value=1e6))
@settings(max_examples=200)
def test_digamma_recurrence(x):
    assert digamma(x + 1.0) == pytest.approx(digamma(x) + 1.0 / x, abs=1e-12)
