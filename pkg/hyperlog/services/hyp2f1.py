"""
Gauss hypergeometric function F(a, b; c; x) on 0 <= x < 1

Routing for positive parameters:
    zero-balanced (c = a + b) and x > NEAR_ONE_X -> (R - log(1 - x))/B
    c < a + b and x > EULER_SWITCH_X             -> Euler transformation
    otherwise                                    -> Maclaurin series
"""

import logging
import math
from functools import lru_cache
from typing import Tuple

import numpy as np

from hyperlog.core.calibration import near_one_calibration
from hyperlog.core.config import (
    CALIBRATION_HI,
    CALIBRATION_LO,
    CALIBRATION_POINTS,
    CALIBRATION_SAFETY,
    EULER_SWITCH_X,
    F21_CACHE_SIZE,
    NEAR_ONE_X,
    SERIES_FIRST_CHUNK,
    SERIES_MAX_CHUNK,
    SERIES_MAX_TERMS,
    SERIES_REL_STOP,
    SERIES_STOP_RUN,
    ZERO_BALANCED_TOL,
)
from hyperlog.core.errors import ConvergenceError, DomainError
from hyperlog.models import CoeffSeq, EvalMethod, EvalResult, HypParams
from hyperlog.services.special_fn import beta, ln_gamma, r_constant

logger = logging.getLogger(__name__)

EPS = float(np.finfo(float).eps)
NEAR_ONE_GAP = 1.0 - NEAR_ONE_X


def pochhammer(a: float, n: int) -> float:
    """
    Rising factorial (a, n) = a(a+1)...(a+n-1), with (a, 0) = 1

    Overflow returns +inf and logs a warning.
    """
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    if n == 0:
        return 1.0
    with np.errstate(over="ignore"):
        value = float(np.prod(a + np.arange(n, dtype=float)))
    if math.isinf(value):
        logger.warning("Pochhammer symbol (%g, %d) overflowed", a, n)
    return value


def check_unit_interval(x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x < 0.0 or x >= 1.0:
        raise DomainError(f"x must lie in [0, 1), got {x!r}")
    return x


def logistic_split(u: float) -> Tuple[float, float]:
    """Return (x, 1 - x) for x = e^u/(1 + e^u) without cancellation in 1 - x"""
    u = float(u)
    if not math.isfinite(u):
        raise DomainError(f"logit must be finite, got {u!r}")
    if u >= 0.0:
        e = math.exp(-u)
        return 1.0 / (1.0 + e), e / (1.0 + e)
    e = math.exp(u)
    return e / (1.0 + e), 1.0 / (1.0 + e)


def _is_zero_balanced(a: float, b: float, c: float) -> bool:
    return abs(a + b - c) <= ZERO_BALANCED_TOL


def _run_lengths(small: np.ndarray, carried: int) -> np.ndarray:
    """Length of the run of True values ending at each index"""
    idx = np.arange(small.size)
    last_big = np.maximum.accumulate(np.where(small, -1, idx))
    return np.where(last_big < 0, idx + 1 + carried, idx - last_big)


def hyp2f1_series(a: float, b: float, c: float, x: float) -> EvalResult:
    """
    Sum the Maclaurin series of F(a, b; c; x) for real a, b and c not a
    non-positive integer

    Terms come from the ratio recurrence in chunks of doubling size.
    Summation stops once SERIES_STOP_RUN consecutive terms are below
    SERIES_REL_STOP times the partial sum.

    Args:
        a: First numerator parameter
        b: Second numerator parameter
        c: Denominator parameter
        x: Argument in [0, 1)

    Returns:
        EvalResult tagged Series
    """
    if c <= 0 and float(c).is_integer():
        raise DomainError(f"c must not be a non-positive integer, got {c}")
    x = check_unit_interval(x)
    if x == 0.0:
        return EvalResult(value=1.0, abs_err_estimate=0.0, method=EvalMethod.SERIES, n_terms=1)

    blocks = [np.ones(1)]
    n_terms = 1
    running = 1.0
    last = 1.0
    run = 0
    n0 = 0
    chunk = SERIES_FIRST_CHUNK
    while True:
        n = np.arange(n0, n0 + chunk, dtype=float)
        ratios = x * (a + n) * (b + n) / ((c + n) * (n + 1.0))
        with np.errstate(under="ignore", over="ignore", invalid="ignore"):
            block = last * np.cumprod(ratios)
        if not np.all(np.isfinite(block)):
            raise ConvergenceError(
                f"Series terms overflowed for F({a}, {b}; {c}; {x})",
                partial_value=math.fsum(np.concatenate(blocks)),
                n_terms=n_terms,
                x=x,
            )
        partial = running + np.cumsum(block)
        small = np.abs(block) <= SERIES_REL_STOP * np.abs(partial)
        run_len = _run_lengths(small, run)
        hits = np.flatnonzero(run_len >= SERIES_STOP_RUN)
        if hits.size:
            stop = int(hits[0])
            blocks.append(block[: stop + 1])
            n_terms += stop + 1
            last_ratio = abs(float(ratios[stop]))
            break
        blocks.append(block)
        n_terms += chunk
        if n_terms >= SERIES_MAX_TERMS:
            raise ConvergenceError(
                f"Series for F({a}, {b}; {c}; {x}) did not converge in {n_terms} terms",
                partial_value=math.fsum(np.concatenate(blocks)),
                n_terms=n_terms,
                x=x,
            )
        run = int(run_len[-1])
        running = float(partial[-1])
        last = float(block[-1])
        n0 += chunk
        chunk = min(2 * chunk, SERIES_MAX_CHUNK)

    terms = np.concatenate(blocks)
    value = math.fsum(terms)
    t_last = abs(float(terms[-1]))
    rho = max(last_ratio, x)
    tail = t_last * rho / (1.0 - rho) if rho < 1.0 else t_last * n_terms
    rounding = math.sqrt(n_terms) * EPS * math.fsum(np.abs(terms))
    logger.debug("F(%g, %g; %g; %g) summed %d terms", a, b, c, x, n_terms)
    return EvalResult(
        value=value,
        abs_err_estimate=tail + rounding,
        method=EvalMethod.SERIES,
        n_terms=n_terms,
    )


def calibrate_near_one(a: float, b: float) -> float:
    """
    Measure K for the near-1 error bound K(1-x)|log(1-x)| by comparing the
    series with the asymptotic value on 1 - x in [CALIBRATION_LO, CALIBRATION_HI]
    """
    big_b = beta(a, b)
    big_r = r_constant(a, b)
    worst = 0.0
    for gap in np.geomspace(CALIBRATION_LO, CALIBRATION_HI, CALIBRATION_POINTS):
        x = 1.0 - float(gap)
        one_minus_x = 1.0 - x
        log1mx = math.log1p(-x)
        series = hyp2f1_series(a, b, a + b, x)
        asymptotic = (big_r - log1mx) / big_b
        mismatch = abs(series.value - asymptotic) + series.abs_err_estimate
        worst = max(worst, mismatch / (one_minus_x * abs(log1mx)))
    return CALIBRATION_SAFETY * worst


def _near_one(a: float, b: float, log1mx: float, one_minus_x: float) -> EvalResult:
    k = near_one_calibration.constant(a, b, calibrate_near_one)
    big_b = beta(a, b)
    value = (r_constant(a, b) - log1mx) / big_b
    return EvalResult(
        value=value,
        abs_err_estimate=k * one_minus_x * abs(log1mx) + 4.0 * EPS * abs(value),
        method=EvalMethod.NEAR1_ASYMPTOTIC,
    )


def _euler(a: float, b: float, c: float, x: float, log1mx: float) -> EvalResult:
    inner = hyp2f1_series(c - a, c - b, c, x)
    exponent = (c - a - b) * log1mx
    factor = math.exp(exponent)
    value = factor * inner.value
    return EvalResult(
        value=value,
        abs_err_estimate=factor * inner.abs_err_estimate + abs(value) * EPS * (2.0 + abs(exponent)),
        method=EvalMethod.EULER_TRANSFORMED,
        n_terms=inner.n_terms,
    )


@lru_cache(maxsize=F21_CACHE_SIZE)
def _f21(a: float, b: float, c: float, x: float) -> EvalResult:
    zero_balanced = _is_zero_balanced(a, b, c)
    if zero_balanced and x > NEAR_ONE_X:
        return _near_one(a, b, math.log1p(-x), 1.0 - x)
    if not zero_balanced and c < a + b and x > EULER_SWITCH_X:
        return _euler(a, b, c, x, math.log1p(-x))
    return hyp2f1_series(a, b, c, x)


@lru_cache(maxsize=F21_CACHE_SIZE)
def _f21_logit(a: float, b: float, c: float, u: float) -> EvalResult:
    x, one_minus_x = logistic_split(u)
    zero_balanced = _is_zero_balanced(a, b, c)
    if zero_balanced and one_minus_x < NEAR_ONE_GAP:
        return _near_one(a, b, -float(np.logaddexp(0.0, u)), one_minus_x)
    if x >= 1.0:
        raise DomainError(f"logit {u} rounds to x = 1 for non-zero-balanced parameters")
    if not zero_balanced and c < a + b and x > EULER_SWITCH_X:
        return _euler(a, b, c, x, -float(np.logaddexp(0.0, u)))
    return hyp2f1_series(a, b, c, x)


def f21(p: HypParams, x: float) -> EvalResult:
    """
    Evaluate F(a, b; c; x) for 0 <= x < 1

    Args:
        p: Positive parameter triple
        x: Argument

    Returns:
        EvalResult with value, error estimate and method tag
    """
    return _f21(p.a, p.b, p.c, check_unit_interval(x))


def f21_at_logit(p: HypParams, u: float) -> EvalResult:
    """F at x = e^u/(1 + e^u), keeping 1 - x = 1/(1 + e^u) exact"""
    return _f21_logit(p.a, p.b, p.c, float(u))


def f21_at_1(p: HypParams) -> float:
    """Gauss value F(a, b; c; 1) = G(c)G(c-a-b)/(G(c-a)G(c-b)) for a + b < c"""
    if p.excess <= ZERO_BALANCED_TOL:
        raise DomainError(f"F(a, b; c; 1) diverges for a + b >= c (a={p.a}, b={p.b}, c={p.c})")
    return math.exp(
        ln_gamma(p.c) + ln_gamma(p.excess) - ln_gamma(p.c - p.a) - ln_gamma(p.c - p.b)
    )


def f21_derivative(p: HypParams, x: float) -> EvalResult:
    """d/dx F(a, b; c; x) = (ab/c) F(a+1, b+1; c+1; x)"""
    return f21(p.shifted(), x).scaled(p.a * p.b / p.c)


def series_coeffs(p: HypParams, n: int) -> CoeffSeq:
    """Coefficients t_0..t_N of the Maclaurin series of F"""
    if n < 1:
        raise DomainError(f"N must be at least 1, got {n}")
    k = np.arange(n, dtype=float)
    ratios = (p.a + k) * (p.b + k) / ((p.c + k) * (k + 1.0))
    return CoeffSeq(coeffs=[1.0] + np.cumprod(ratios).tolist())


def ratio_coeffs(p: HypParams, n: int) -> CoeffSeq:
    """
    Coefficients a_0..a_N of F'(x)/F(x) by power-series division

    With t_k the coefficients of F and d_k = (k+1) t_{k+1} those of F',
    a_n = d_n - sum_{k=1..n} t_k a_{n-k} (t_0 = 1, so no pivoting).
    """
    if n < 1:
        raise DomainError(f"N must be at least 1, got {n}")
    t = series_coeffs(p, n + 1).as_array()
    d = np.arange(1, n + 2, dtype=float) * t[1:]
    out = np.empty(n + 1)
    out[0] = d[0]
    for m in range(1, n + 1):
        out[m] = d[m] - float(np.dot(t[1 : m + 1], out[m - 1 :: -1]))
    return CoeffSeq(coeffs=out.tolist())


def f21_grid(p: HypParams, xs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Values and error estimates of F on an array of arguments"""
    results = [f21(p, float(x)) for x in xs]
    return (
        np.array([r.value for r in results]),
        np.array([r.abs_err_estimate for r in results]),
    )


def clear_caches() -> None:
    """Forget cached values of F and the near-1 constants they were computed with"""
    _f21.cache_clear()
    _f21_logit.cache_clear()
    near_one_calibration.clear()
