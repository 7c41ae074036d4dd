"""
Root solving, grid checkers and threshold predicates
"""

import logging
import math
from enum import Enum
from typing import Callable, List, NamedTuple, Optional, Union

import numpy as np

from hyperlog.core.config import (
    CONCAVITY_EDGE_SKIP,
    CONCAVITY_SLACK,
    MONOTONE_SLACK,
    ROOT_BRACKET_EXPANSIONS,
    ROOT_MAX_ITER,
    ROOT_TOL,
    THRESHOLD_C0,
    THRESHOLD_C1,
)
from hyperlog.core.errors import BracketError, ContractError, DomainError, EvaluationError
from hyperlog.models import (
    ConcavityKind,
    ConcavityVerdict,
    EvalResult,
    GridSpec,
    MonotoneKind,
    MonotonicityVerdict,
    PhiExponents,
    ZeroBalancedPair,
)
from hyperlog.services.hyp2f1 import logistic_split, ratio_coeffs
from hyperlog.services.logtype import E_MINUS_1, g_at_logit, g_fn, s_fn

logger = logging.getLogger(__name__)

GridFn = Callable[[float], Union[float, EvalResult]]
ErrorFn = Callable[[float], float]


class RootSolution(NamedTuple):
    value: float
    residual: float
    iterations: int
    lo: float
    hi: float


class ThresholdPrediction(str, Enum):
    PREDICT_GT = "predict_gt"
    PREDICT_LT = "predict_lt"
    INCONCLUSIVE = "inconclusive"


class HConvexity(str, Enum):
    CONVEX = "convex"
    CONCAVE = "concave"


class Region(str, Enum):
    X_IN_01 = "x_in_01"
    X_GT_1 = "x_gt_1"


def _finite(f: Callable[[float], float], x: float) -> float:
    y = f(x)
    if isinstance(y, EvalResult):
        y = y.value
    y = float(y)
    if not math.isfinite(y):
        raise EvaluationError(f"Non-finite value {y!r} at x={x!r}", point=x)
    return y


# Root solver


def solve_bracket(
    f: Callable[[float], float], lo: float, hi: float, tol: float = ROOT_TOL, max_iter: int = ROOT_MAX_ITER
) -> RootSolution:
    """
    Find a sign change of f in [lo, hi] by alternating secant and bisection
    steps; every second step halves the bracket, so the loop terminates

    Args:
        f: Continuous function
        lo: Left end
        hi: Right end
        tol: Stop when |f| <= tol or the bracket is narrower than tol

    Returns:
        RootSolution with the root and the final bracket
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    f_lo, f_hi = _finite(f, lo), _finite(f, hi)
    if f_lo == 0.0:
        return RootSolution(lo, 0.0, 0, lo, lo)
    if f_hi == 0.0:
        return RootSolution(hi, 0.0, 0, hi, hi)
    if (f_lo > 0) == (f_hi > 0):
        raise BracketError(
            f"No sign change on [{lo}, {hi}]: f(lo)={f_lo:.6g}, f(hi)={f_hi:.6g}",
            lo=lo,
            hi=hi,
            f_lo=f_lo,
            f_hi=f_hi,
        )
    x, fx = lo, f_lo
    for it in range(1, max_iter + 1):
        x = 0.5 * (lo + hi)
        if it % 2 == 1:
            secant = hi - f_hi * (hi - lo) / (f_hi - f_lo)
            if lo < secant < hi:
                x = secant
        fx = _finite(f, x)
        if fx == 0.0 or abs(fx) <= tol:
            return RootSolution(x, fx, it, lo, hi)
        if (fx > 0) == (f_lo > 0):
            lo, f_lo = x, fx
        else:
            hi, f_hi = x, fx
        if hi - lo <= tol:
            x = lo if abs(f_lo) <= abs(f_hi) else hi
            return RootSolution(x, f_lo if x == lo else f_hi, it, lo, hi)
    raise BracketError(
        f"Root solver did not converge in {max_iter} iterations",
        lo=lo,
        hi=hi,
        f_lo=f_lo,
        f_hi=f_hi,
    )


def bracket_root(f: Callable[[float], float], lo: float, hi: float, tol: float = ROOT_TOL) -> float:
    """Root of f on [lo, hi] given a sign change"""
    return solve_bracket(f, lo, hi, tol).value


def _expand_upward(f: Callable[[float], float], lo: float, hi: float, log_scale: bool) -> float:
    """Move hi up until f(hi) > 0"""
    for _ in range(ROOT_BRACKET_EXPANSIONS):
        if _finite(f, hi) > 0:
            return hi
        hi = hi * 2.0 if log_scale else lo + 2.0 * (hi - lo)
    raise BracketError(f"Could not bracket a root above {lo}", lo=lo, hi=hi, f_lo=_finite(f, lo), f_hi=_finite(f, hi))


def gamma_root_solution(pair: ZeroBalancedPair, tol: float = 1e-13) -> RootSolution:
    if not pair.product_at_most_one:
        raise DomainError(f"gamma_root needs cd <= 1, got c={pair.c}, d={pair.d}")
    f = lambda s: g_at_logit(pair, math.log(s)).value - 1.0
    g_half = g_fn(pair, 0.5)
    try:
        hi = _expand_upward(f, 1.0, 2.0, log_scale=True)
        solution = solve_bracket(f, 1.0, hi, tol)
    except BracketError as e:
        e.diagnostics["g_half"] = g_half
        raise
    if not solution.value > 1.0:
        raise ContractError(f"gamma root {solution.value} is not above 1 (g(1/2)={g_half})")
    logger.info("gamma root for c=%g, d=%g: %.12g", pair.c, pair.d, solution.value)
    return solution


def gamma_root(pair: ZeroBalancedPair) -> float:
    """Solution s > 1 of g(s/(1+s)) = 1, for cd <= 1"""
    return gamma_root_solution(pair).value


def x0_root_solution(tol: float = 1e-14) -> RootSolution:
    """Positive solution of s(x) = 1, bracketed by [e - 1, 3]"""
    return solve_bracket(lambda x: float(s_fn(x)) - 1.0, E_MINUS_1, 3.0, tol)


def x0_root() -> float:
    return x0_root_solution().value


def beta_root_solution(pair: ZeroBalancedPair, e: PhiExponents, tol: float = 1e-13) -> RootSolution:
    """
    Solve g(y/(1+y)) = 1 with y = phi^-1(x/(1-x)) in the logit variable
    v = log(x/(1-x)); the returned value is beta = e^v/(1+e^v)
    """

    def f(v: float) -> float:
        u = v / e.a if v < 0.0 else v / e.b
        return g_at_logit(pair, u).value - 1.0

    lo, hi = -1.0, 1.0
    for _ in range(ROOT_BRACKET_EXPANSIONS):
        if _finite(f, lo) < 0:
            break
        lo *= 2.0
    hi = _expand_upward(f, lo, hi, log_scale=True)
    solution = solve_bracket(f, lo, hi, tol)
    beta, _ = logistic_split(solution.value)
    return solution._replace(value=beta)


def beta_root(pair: ZeroBalancedPair, e: PhiExponents) -> float:
    """beta in (0, 1) with g(phi^-1(beta/(1-beta))/(1 + phi^-1(beta/(1-beta)))) = 1"""
    return beta_root_solution(pair, e).value


def threshold_ratio(pair: ZeroBalancedPair) -> float:
    """(a0 - 1)/h"""
    return (pair.a0 - 1.0) / pair.h


def threshold_predicate(pair: ZeroBalancedPair) -> ThresholdPrediction:
    ratio = threshold_ratio(pair)
    if ratio <= THRESHOLD_C0:
        return ThresholdPrediction.PREDICT_GT
    if ratio >= THRESHOLD_C1:
        return ThresholdPrediction.PREDICT_LT
    return ThresholdPrediction.INCONCLUSIVE


def ratio_coeff_gap(pair: ZeroBalancedPair) -> float:
    """a0 - a1 from the series division minus h = a0^2/(c+d+1)"""
    coeffs = ratio_coeffs(pair.params, 1)
    return (coeffs[0] - coeffs[1]) - pair.h


# Grid checkers


def evaluate_on_grid(f: GridFn, xs: np.ndarray, error: Optional[ErrorFn] = None):
    """Values and error estimates of f on xs; f may return floats or EvalResults"""
    values = np.empty(xs.size)
    errors = np.zeros(xs.size)
    for i, x in enumerate(xs):
        x = float(x)
        y = f(x)
        if isinstance(y, EvalResult):
            errors[i] = y.abs_err_estimate
            y = y.value
        y = float(y)
        if not math.isfinite(y):
            raise EvaluationError(f"Non-finite value {y!r} at x={x!r}", point=x)
        values[i] = y
    if error is not None:
        errors = errors + np.array([float(error(float(x))) for x in xs])
    return values, errors


def check_monotone(
    f: GridFn,
    grid: GridSpec,
    direction: MonotoneKind,
    error: Optional[ErrorFn] = None,
    slack: float = MONOTONE_SLACK,
) -> MonotonicityVerdict:
    """
    Check consecutive differences of f on the grid

    A difference counts against a direction only when it exceeds slack plus
    the error estimates of its two endpoints.
    """
    direction = MonotoneKind(direction)
    if direction is MonotoneKind.NON_MONOTONE:
        raise DomainError("direction must be increasing or decreasing")
    xs = grid.points()
    values, errors = evaluate_on_grid(f, xs, error)
    err_sum = errors[:-1] + errors[1:]
    sign = 1.0 if direction is MonotoneKind.INCREASING else -1.0
    signed = sign * np.diff(values)
    holds = bool(np.all(signed + err_sum >= -slack))
    opposite_holds = bool(np.all(-signed + err_sum >= -slack))
    worst = int(np.argmin(signed + err_sum))
    if holds:
        kind = direction
    elif opposite_holds:
        kind = MonotoneKind.DECREASING if direction is MonotoneKind.INCREASING else MonotoneKind.INCREASING
    else:
        kind = MonotoneKind.NON_MONOTONE
    return MonotonicityVerdict(
        kind=kind,
        requested=direction,
        worst_violation=float(signed[worst]),
        error_allowance=float(err_sum[worst]),
        witness=None if holds else float(xs[worst]),
        values_at_ends=[float(values[0]), float(values[-1])],
    )


def second_differences(xs: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Second differences, scaled to match v[i-1] - 2v[i] + v[i+1] on uniform grids"""
    h1 = np.diff(xs)[:-1]
    h2 = np.diff(xs)[1:]
    return 2.0 * (h1 * values[2:] - (h1 + h2) * values[1:-1] + h2 * values[:-2]) / (h1 + h2)


def inflection_points(f: GridFn, grid: GridSpec) -> List[float]:
    """Grid locations where the second differences change sign"""
    xs = grid.points()
    values, _ = evaluate_on_grid(f, xs)
    return _sign_changes(xs[1:-1], second_differences(xs, values))


def _sign_changes(xs: np.ndarray, d2: np.ndarray) -> List[float]:
    signs = np.sign(d2)
    idx = np.flatnonzero(signs[:-1] * signs[1:] < 0)
    return [float(0.5 * (xs[i] + xs[i + 1])) for i in idx]


def check_concavity(
    f: GridFn,
    grid: GridSpec,
    error: Optional[ErrorFn] = None,
    slack: float = CONCAVITY_SLACK,
    edge_skip: int = CONCAVITY_EDGE_SKIP,
) -> ConcavityVerdict:
    """
    Classify f on the grid from its second differences

    The outermost edge_skip points at each end are left out. The witness of
    a 'neither' verdict is the largest positive second difference.
    """
    xs = grid.points()
    values, errors = evaluate_on_grid(f, xs, error)
    d2 = second_differences(xs, values)
    err2 = errors[:-2] + 2.0 * errors[1:-1] + errors[2:]
    centers = xs[1:-1]
    keep = slice(edge_skip, d2.size - edge_skip)
    d2, err2, centers = d2[keep], err2[keep], centers[keep]
    if d2.size == 0:
        raise DomainError("grid too small for a concavity check")
    concave_excess = float(np.max(d2 - err2))
    convex_excess = float(np.max(-d2 - err2))
    if concave_excess <= slack:
        kind, witness = ConcavityKind.CONCAVE, None
    elif convex_excess <= slack:
        kind, witness = ConcavityKind.CONVEX, None
    else:
        kind = ConcavityKind.NEITHER
        witness = float(centers[int(np.argmax(d2 - err2))])
    significant = np.where(np.abs(d2) > slack + err2, d2, 0.0)
    nonzero = significant != 0.0
    return ConcavityVerdict(
        kind=kind,
        max_second_difference=float(np.max(d2)),
        min_second_difference=float(np.min(d2)),
        concave_excess=concave_excess,
        convex_excess=convex_excess,
        witness=witness,
        inflections=_sign_changes(centers[nonzero], significant[nonzero]) if nonzero.sum() > 1 else [],
    )


def power_ratio_prediction(h_convexity: HConvexity, c: float, region: Region) -> MonotoneKind:
    """
    Monotonicity of x -> f(x^c)/f(x)^c when h(t) = log f(e^t) is convex or
    concave on the region x in (0, 1) or x > 1
    """
    h_convexity = HConvexity(h_convexity)
    region = Region(region)
    if c == 0.0:
        raise DomainError("c must be non-zero")
    if c == 1.0:
        raise DomainError("c = 1 gives the constant ratio 1")
    in_unit = region is Region.X_IN_01
    # convex h: increasing for c in (0, 1) on (0, 1); c > 1 and c < 0 behave alike
    increasing_if_convex = in_unit if 0.0 < c < 1.0 else not in_unit
    increasing = increasing_if_convex if h_convexity is HConvexity.CONVEX else not increasing_if_convex
    return MonotoneKind.INCREASING if increasing else MonotoneKind.DECREASING


# theorem-label name of the classifier
ssthm_classify = power_ratio_prediction
