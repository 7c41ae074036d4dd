"""
Logarithmic-type functions built on the zero-balanced Gauss function
"""

import logging
import math
from enum import Enum
from typing import Callable, Sequence, Tuple

import numpy as np

from hyperlog.core.config import BREAKPOINT_AGREEMENT, BREAKPOINT_WINDOW
from hyperlog.core.errors import ContractError, DomainError
from hyperlog.models import EvalMethod, EvalResult, HypParams, PhiExponents, ZeroBalancedPair
from hyperlog.services.hyp2f1 import check_unit_interval, f21, f21_at_logit, logistic_split
from hyperlog.services.special_fn import beta, r_constant

logger = logging.getLogger(__name__)

LOG2 = math.log(2.0)
E_MINUS_1 = math.e - 1.0


class FRatio(str, Enum):
    F1 = "f1"
    F2 = "f2"
    F3 = "f3"
    F4 = "f4"


# g(x) = x F(c, d; c+d; x)


def g_eval(pair: ZeroBalancedPair, x: float) -> EvalResult:
    x = check_unit_interval(x)
    if x == 0.0:
        return EvalResult(value=0.0, abs_err_estimate=0.0, method=EvalMethod.SERIES)
    return f21(pair.params, x).scaled(x)


def g_fn(pair: ZeroBalancedPair, x: float) -> float:
    """g(x) = x F(c, d; c+d; x) on [0, 1)"""
    return g_eval(pair, x).value


def g_at_logit(pair: ZeroBalancedPair, u: float) -> EvalResult:
    """g(e^u/(1 + e^u)), valid where the argument rounds to 1"""
    x, _ = logistic_split(u)
    return f21_at_logit(pair.params, u).scaled(x)


def g_power(pair: ZeroBalancedPair, s: float, p: float) -> EvalResult:
    """g(s^p/(1 + s^p)) for s > 0"""
    if s <= 0.0 or not math.isfinite(s):
        raise DomainError(f"s must be finite and positive, got {s!r}")
    return g_at_logit(pair, p * math.log(s))


# phi(t) = max(t^a, t^b)


def _require_nonnegative(name: str, t: float) -> float:
    t = float(t)
    if not t >= 0.0:
        raise DomainError(f"{name} must be non-negative, got {t!r}")
    return t


def phi(e: PhiExponents, t: float) -> float:
    t = _require_nonnegative("t", t)
    return max(t**e.a, t**e.b)


def phi_inv(e: PhiExponents, y: float) -> float:
    y = _require_nonnegative("y", y)
    return min(y ** (1.0 / e.a), y ** (1.0 / e.b))


def omega_eval(pair: ZeroBalancedPair, p: float, r: float) -> EvalResult:
    if not p > 0.0:
        raise DomainError(f"p must be positive, got {p!r}")
    if not r > 0.0:
        raise DomainError(f"r must be positive, got {r!r}")
    if r >= 1.0:
        logger.debug("omega evaluated at r=%g outside the unit interval", r)
    g = g_power(pair, r, p)
    value = g.value ** (1.0 / p)
    err = value * g.abs_err_estimate / (p * g.value) if g.value > 0 else 0.0
    return EvalResult(value=value, abs_err_estimate=err, method=g.method, n_terms=g.n_terms)


def omega(pair: ZeroBalancedPair, p: float, r: float) -> float:
    """omega(c, d, p, r) = g(r^p/(1 + r^p))^(1/p)"""
    return omega_eval(pair, p, r).value


# Ratios and combinations of the zero-balanced function


def f_ratio_eval(p: HypParams, x: float, which: FRatio) -> EvalResult:
    """
    Evaluate one of
        f1 = (F - 1)/log(1/(1-x))
        f2 = B F + log(1-x)
        f3 = B F + log(1-x)/x
        f4 = x F/log(1/(1-x))
    for zero-balanced parameters and 0 < x < 1
    """
    if not p.zero_balanced:
        raise DomainError(f"f-ratios need zero-balanced parameters, got {p}")
    x = check_unit_interval(x)
    if x == 0.0:
        raise DomainError("f-ratios are defined on the open interval (0, 1)")
    which = FRatio(which)
    big_f = f21(p, x)
    log1mx = math.log1p(-x)
    ell = -log1mx
    if which is FRatio.F1:
        value = (big_f.value - 1.0) / ell
        err = (big_f.abs_err_estimate + 2.0 * np.finfo(float).eps * big_f.value) / ell
    elif which is FRatio.F4:
        value = x * big_f.value / ell
        err = x * big_f.abs_err_estimate / ell
    else:
        big_b = beta(p.a, p.b)
        tail = log1mx if which is FRatio.F2 else log1mx / x
        value = big_b * big_f.value + tail
        err = big_b * big_f.abs_err_estimate
    return EvalResult(value=value, abs_err_estimate=err, method=big_f.method, n_terms=big_f.n_terms)


def f_ratios(p: HypParams, x: float, which: FRatio) -> float:
    return f_ratio_eval(p, x, which).value


def f_ratio_limits(p: HypParams, which: FRatio) -> Tuple[float, float]:
    """Limits of an f-ratio as x -> 0+ and x -> 1-"""
    big_b = beta(p.a, p.b)
    big_r = r_constant(p.a, p.b)
    which = FRatio(which)
    if which is FRatio.F1:
        return p.a * p.b / (p.a + p.b), 1.0 / big_b
    if which is FRatio.F2:
        return big_b, big_r
    if which is FRatio.F3:
        return big_b - 1.0, big_r
    return 1.0, 1.0 / big_b


# Elementary helpers; numpy-aware


def s_fn(x):
    """s(x) = log(1+x) log(1 + log(1+x))"""
    ell = np.log1p(x)
    return ell * np.log1p(ell)


def r_fn(x):
    """Softplus r(x) = log(1 + e^x)"""
    return np.logaddexp(0.0, x)


def v_fn(x):
    """v(x) = log(1 + log(1 + e^x))"""
    return np.log1p(r_fn(x))


def w_fn(x):
    """w(x) = e^x + v(x)(e^x - 1 - r(x))"""
    r = r_fn(x)
    return np.exp(x) + np.log1p(r) * (np.expm1(x) - r)


# Piecewise functions


def _piecewise(
    key: float, breakpoints: Sequence[float], branches: Sequence[Callable[[], float]], label: str
) -> float:
    """
    Evaluate the branch owning key (branch i covers (bp[i-1], bp[i]]).
    Within BREAKPOINT_WINDOW of a breakpoint both neighbours are evaluated
    and must agree to BREAKPOINT_AGREEMENT.
    """
    index = int(np.searchsorted(breakpoints, key, side="left"))
    value = branches[index]()
    for i, bp in enumerate(breakpoints):
        if abs(key - bp) <= BREAKPOINT_WINDOW * max(1.0, abs(bp)):
            left, right = branches[i](), branches[i + 1]()
            if abs(left - right) > BREAKPOINT_AGREEMENT * max(1.0, abs(left)):
                raise ContractError(
                    f"{label}: branches disagree at breakpoint {bp:.12g} ({left:.12g} vs {right:.12g})"
                )
    return value


def _check_bound_args(a: float, x: float) -> None:
    if not 0.0 < a < 1.0:
        raise DomainError(f"a must lie in (0, 1), got {a!r}")
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x!r}")


def f1_bound_fn(a: float, p: float, x: float) -> float:
    """
    log^p(1 + phi(x))/phi(log^p(1 + x)) with phi(t) = max(t^a, t);
    breakpoints at x = 1 and x = e - 1
    """
    _check_bound_args(a, x)
    if not p > 0.0:
        raise DomainError(f"p must be positive, got {p!r}")
    ell = math.log1p(x)
    return _piecewise(
        x,
        (1.0, E_MINUS_1),
        (
            lambda: (math.log1p(x**a) / ell**a) ** p,
            lambda: ell ** (p * (1.0 - a)),
            lambda: 1.0,
        ),
        "f1_bound_fn",
    )


def f2_bound_fn(a: float, x: float) -> float:
    """
    s(phi(x))/phi(s(x)) with phi(t) = max(t^a, t); breakpoints at x = 1 and
    at s(x) = 1, i.e. x = x0
    """
    _check_bound_args(a, x)
    sx = float(s_fn(x))
    if x <= 1.0 or abs(x - 1.0) <= BREAKPOINT_WINDOW:
        return _piecewise(
            x,
            (1.0,),
            (lambda: float(s_fn(x**a)) / sx**a, lambda: sx ** (1.0 - a)),
            "f2_bound_fn",
        )
    return _piecewise(sx, (1.0,), (lambda: sx ** (1.0 - a), lambda: 1.0), "f2_bound_fn")


def _check_gamma_root(gamma_root: float) -> None:
    # the branch order assumes 1 < gamma_root, which cd <= 1 guarantees
    if not gamma_root > 1.0:
        raise ContractError(f"gamma_root must exceed 1, got {gamma_root!r}")


def _phi_g_pieces(pair: ZeroBalancedPair, e: PhiExponents, s: float):
    g_s = lambda: g_power(pair, s, 1.0).value
    g_sa = lambda: g_power(pair, s, e.a).value
    g_sb = lambda: g_power(pair, s, e.b).value
    return g_s, g_sa, g_sb


def T_fn(pair: ZeroBalancedPair, e: PhiExponents, s: float, gamma_root: float) -> float:
    """
    T(s) = g(phi(s)/(1+phi(s))) / max(g^a(s/(1+s)), g(s/(1+s))), split at
    s = 1 and s = gamma_root
    """
    _check_gamma_root(gamma_root)
    if not s > 0.0:
        raise DomainError(f"s must be positive, got {s!r}")
    g_s, g_sa, g_sb = _phi_g_pieces(pair, e, s)
    return _piecewise(
        s,
        (1.0, gamma_root),
        (
            lambda: g_sa() / g_s() ** e.a,
            lambda: g_sb() / g_s() ** e.a,
            lambda: g_sb() / g_s(),
        ),
        "T_fn",
    )


def t_fn(pair: ZeroBalancedPair, e: PhiExponents, s: float, gamma_root: float) -> float:
    """
    t(s) = g(phi(s)/(1+phi(s))) / phi(g(s/(1+s))), split at s = 1 and
    s = gamma_root
    """
    _check_gamma_root(gamma_root)
    if not s > 0.0:
        raise DomainError(f"s must be positive, got {s!r}")
    g_s, g_sa, g_sb = _phi_g_pieces(pair, e, s)
    return _piecewise(
        s,
        (1.0, gamma_root),
        (
            lambda: g_sa() / g_s() ** e.a,
            lambda: g_sb() / g_s() ** e.a,
            lambda: g_sb() / g_s() ** e.b,
        ),
        "t_fn",
    )


def phi_g_ratio(pair: ZeroBalancedPair, e: PhiExponents, s: float) -> float:
    """T(s) from its definition, without the case split (any pair)"""
    if not s > 0.0:
        raise DomainError(f"s must be positive, got {s!r}")
    numerator = g_power(pair, s, e.a if s < 1.0 else e.b).value
    g_s = g_power(pair, s, 1.0).value
    return numerator / max(g_s**e.a, g_s)


def phi_g_terms(pair: ZeroBalancedPair, e: PhiExponents, x: float) -> Tuple[float, float]:
    """(g(x), phi(g(y/(1+y)))) with y = phi^-1(x/(1-x)), for 0 < x < 1"""
    x = check_unit_interval(x)
    if x == 0.0:
        raise DomainError("x must be positive")
    # log(x/(1-x)) mapped through phi^-1 stays in logit form
    v = math.log(x) - math.log1p(-x)
    u = v / e.a if v < 0.0 else v / e.b
    inner = g_at_logit(pair, u).value
    return g_fn(pair, x), phi(e, inner)


def t_ratio_x(pair: ZeroBalancedPair, e: PhiExponents, x: float) -> float:
    """g(x) / (b phi(g(phi^-1(x/(1-x))/(1+phi^-1(x/(1-x))))))"""
    gx, phig = phi_g_terms(pair, e, x)
    return gx / (e.b * phig)


def phi_g_inequality(pair: ZeroBalancedPair, e: PhiExponents, x: float) -> Tuple[float, float]:
    """(lhs, rhs) of g(x) <= b(1+b-a) phi(g(...))"""
    gx, phig = phi_g_terms(pair, e, x)
    return gx, e.b * (1.0 + e.b - e.a) * phig


def h_xy(pair: ZeroBalancedPair, x: float, y: float) -> float:
    """(g(x) + g(y))/g(x + y - xy)"""
    lhs, rhs = addition_terms(pair, x, y)
    return lhs / rhs


def d_xy(pair: ZeroBalancedPair, x: float, y: float) -> float:
    """g(x) + g(y) - g(x + y - xy)"""
    lhs, rhs = addition_terms(pair, x, y)
    return lhs - rhs


def addition_terms(pair: ZeroBalancedPair, x: float, y: float) -> Tuple[float, float]:
    """(g(x) + g(y), g(x + y - xy)); 1 - (x + y - xy) = (1-x)(1-y) is kept exact"""
    for name, value in (("x", x), ("y", y)):
        if not 0.0 < value < 1.0:
            raise DomainError(f"{name} must lie in (0, 1), got {value!r}")
    u = math.log1p(-(1.0 - x) * (1.0 - y)) - math.log((1.0 - x) * (1.0 - y))
    return g_fn(pair, x) + g_fn(pair, y), g_at_logit(pair, u).value


def addition_terms_eval(pair: ZeroBalancedPair, x: float, y: float) -> Tuple[float, float, float]:
    """addition_terms plus the summed error estimate"""
    gx, gy = g_eval(pair, x), g_eval(pair, y)
    u = math.log1p(-(1.0 - x) * (1.0 - y)) - math.log((1.0 - x) * (1.0 - y))
    gz = g_at_logit(pair, u)
    err = gx.abs_err_estimate + gy.abs_err_estimate + gz.abs_err_estimate
    return gx.value + gy.value, gz.value, err


def big_g_eval(pair: ZeroBalancedPair, u: float) -> EvalResult:
    # log x = -log(1 + e^-u) stays finite where x itself underflows
    f = f21_at_logit(pair.params, u)
    log_x = -float(np.logaddexp(0.0, -float(u)))
    return EvalResult(
        value=log_x + math.log(f.value),
        abs_err_estimate=f.abs_err_estimate / f.value,
        method=f.method,
        n_terms=f.n_terms,
    )


def big_g(pair: ZeroBalancedPair, u: float) -> float:
    """G(u) = log g(e^u/(1 + e^u))"""
    return big_g_eval(pair, u).value


def bernoulli_lhs_rhs(c: float, t: float, e: PhiExponents) -> Tuple[float, float]:
    """(log(1 + c phi(t)), c max(log^a(1+t), b log(1+t)))"""
    if not c >= 1.0:
        raise DomainError(f"c must be at least 1, got {c!r}")
    if not t > 0.0:
        raise DomainError(f"t must be positive, got {t!r}")
    ell = math.log1p(t)
    return math.log1p(c * phi(e, t)), c * max(ell**e.a, e.b * ell)


def log_power_ratio(h: Callable[[float], float], c: float, x: float) -> float:
    """log of f(x^c)/f(x)^c where h(t) = log f(e^t)"""
    if c == 0.0:
        raise DomainError("c must be non-zero")
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x!r}")
    t = math.log(x)
    return h(c * t) - c * h(t)


def rescaled_argument(x: float, p: float) -> float:
    """z = 1 - (1-x)^(1/p)"""
    return -math.expm1(math.log1p(-x) / p)
