"""
Verification suites keyed by check id

Each suite evaluates one claim over its parameter sets and grids and records
every comparison in a MarginLedger. Suites over many parameter sets hand the
sets to a thread pool and merge the partial reports.
"""

import logging
import math
import time
from collections import Counter
from functools import partial
from itertools import product
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from hyperlog.core.config import (
    COEFF_SLACK,
    ENDPOINT_TOL,
    ERROR_WIDENING,
    EULER_GAMMA,
    EULER_SWITCH_X,
    NEAR_ONE_X,
    STRICT_TOL,
    SUITE_GRID_N,
    worker_count,
)
from hyperlog.core.errors import ContractError, DomainError, UsageError
from hyperlog.models import (
    GridSpec,
    HypParams,
    MonotoneKind,
    PhiExponents,
    ReportStatus,
    RunSettings,
    Spacing,
    VerificationReport,
    ZeroBalancedPair,
)
from hyperlog.services.analysis import (
    HConvexity,
    Region,
    ThresholdPrediction,
    beta_root,
    check_concavity,
    check_monotone,
    gamma_root,
    ratio_coeff_gap,
    power_ratio_prediction,
    threshold_predicate,
    threshold_ratio,
    x0_root,
)
from hyperlog.services.hyp2f1 import f21, f21_at_1, hyp2f1_series, ratio_coeffs, series_coeffs
from hyperlog.services.logtype import (
    E_MINUS_1,
    LOG2,
    FRatio,
    T_fn,
    addition_terms_eval,
    bernoulli_lhs_rhs,
    big_g_eval,
    d_xy,
    f1_bound_fn,
    f2_bound_fn,
    f_ratio_eval,
    f_ratio_limits,
    f_ratios,
    g_eval,
    g_fn,
    g_power,
    h_xy,
    log_power_ratio,
    omega_eval,
    phi_g_inequality,
    phi_g_ratio,
    phi_inv,
    r_fn,
    rescaled_argument,
    t_fn,
    t_ratio_x,
    v_fn,
    w_fn,
)
from hyperlog.services.reporting import MarginLedger, merge_maps, merge_reports
from hyperlog.services.special_fn import beta, digamma, ln_gamma, r_constant

logger = logging.getLogger(__name__)


def _pair(c: float, d: float) -> ZeroBalancedPair:
    return ZeroBalancedPair(c=c, d=d)


def _admissible_pairs() -> List[ZeroBalancedPair]:
    """Ten c values times five d values, all with 1/c + 1/d >= 1"""
    pairs = []
    for c in np.linspace(0.2, 3.0, 10):
        d_hi = min(3.0, 0.98 * c / (c - 1.0)) if c > 1.0 else 3.0
        for d in np.linspace(0.2, d_hi, 5):
            pairs.append(_pair(round(float(c), 4), round(float(d), 4)))
    return pairs


ADMISSIBLE_PAIRS = _admissible_pairs()
INFLECTION_PAIRS = [
    _pair(c, d)
    for c, d in ((2.5, 2.5), (3.0, 3.0), (4.0, 4.0), (5.0, 5.0), (6.0, 6.0), (3.0, 4.0), (2.0, 6.0), (4.0, 6.0), (3.0, 5.0), (5.0, 8.0))
]
# cd <= 1
PRODUCT_PAIRS = [_pair(c, d) for c, d in ((1.0, 1.0), (0.5, 0.5), (0.5, 2.0), (0.25, 4.0), (0.8, 1.25))]
PHI_EXPONENTS = [PhiExponents(a=a, b=b) for a, b in ((0.25, 1.5), (0.5, 2.0), (0.75, 3.0), (0.5, 1.5))]

ZB_ANY = [_pair(a, b) for a, b in ((0.5, 0.5), (1.0, 1.0), (0.3, 0.8), (2.0, 2.0), (1.5, 3.0))]
ZB_BELOW_ONE = [_pair(a, b) for a, b in ((0.5, 0.5), (0.3, 0.8), (0.25, 0.75), (0.9, 0.6))]
ZB_ABOVE_ONE = [_pair(a, b) for a, b in ((2.0, 2.0), (1.5, 3.0), (1.2, 1.7), (3.0, 3.0))]
F4_REGIME_PAIRS = [
    _pair(c, d)
    for c, d in ((0.5, 2.0), (2.0, 0.5), (0.25, 4.0), (3.0, 0.3), (0.5, 0.5), (2.0, 2.0), (1.0, 3.0), (3.0, 1.0), (0.75, 2.0), (1.5, 1.5))
]

EULER_TRIPLES = ((1.5, 1.2, 2.0), (2.0, 3.0, 4.0), (0.8, 0.9, 1.1), (2.5, 1.5, 3.5))
RATIO_TRIPLES = tuple(
    (a, b, c)
    for a in (0.25, 0.5, 0.75, 1.0)
    for b, c in ((0.5, 1.0), (1.0, 1.0), (0.5, 2.0), (1.0, 1.5), (0.75, 3.0))
)
RATIO_ORDER = 50

BERNOULLI_C = tuple(np.linspace(1.0, 10.0, 10).tolist())
BERNOULLI_EXPONENTS = [PhiExponents(a=a, b=b) for a, b in ((0.25, 1.5), (0.5, 2.0), (0.75, 3.0), (1.0, 1.0), (0.5, 1.0))]
BOUND_A = (0.25, 0.5, 0.75)
BOUND_P = (0.5, 1.0, 2.0)
POWER_RATIO_EXPONENTS = (1.0 / 3.0, 0.5, 2.0, 3.0, -1.0)
POWER_RATIO_REGIONS = {Region.X_IN_01: (0.01, 0.99), Region.X_GT_1: (1.01, 10.0)}
RESCALE_PAIRS = [_pair(c, d) for c, d in ((0.5, 0.5), (1.0, 1.0), (0.3, 0.7), (0.8, 1.0), (0.25, 0.25))]
RESCALE_POWERS = (1.0, 1.5, 2.0, 4.0, 10.0)
OUTSIDE_UNIT_R = 4.0
OUTSIDE_UNIT_VALUES = {1.0: 1.61, 2.0: 1.68, 4.0: 1.53}
OUTSIDE_UNIT_CLOSED_FORMS = {1.0: math.log(5.0), 2.0: math.sqrt(math.log(17.0)), 4.0: math.log(257.0) ** 0.25}
BETA_GRID = (0.5, 1.0, 2.0, 3.0, 4.0, 6.0)
BETA_EXPONENTS = [PhiExponents(a=a, b=b) for a, b in ((0.5, 2.0), (1.0, 1.0), (0.25, 3.0))]
# (a0 - 1)/h falls strictly between the two thresholds
INCONCLUSIVE_PAIR = _pair(2.15, 2.15)
S_VALUES = (0.01, 0.1, 0.5, 2.0, 10.0, 100.0)
RATIO_BOUND_EXPONENTS = ((0.25, 1.5), (0.5, 2.0), (0.75, 3.0), (1.0, 4.0), (2.0, 3.0))
SUBADDITIVE_EXPONENTS = ((0.5, 0.5), (1.0, 2.0), (0.3, 3.0), (2.0, 5.0))
LOG_CONCAVE_EXPONENTS = ((0.5, 2.0), (1.0, 3.0), (-1.0, 2.0), (2.0, 6.0))
ADDITION_ABOVE_ONE = [_pair(c, d) for c, d in ((1.5, 1.5), (2.0, 2.0), (3.0, 1.5), (2.0, 4.0))]
ADDITION_SLACK = 1e-6
CONSTANT_SEARCH_PAIRS = PRODUCT_PAIRS + [_pair(c, d) for c, d in ((2.0, 2.0), (3.0, 0.5), (1.5, 1.5))]
BETA_PROFILE_PAIRS = [_pair(c, d) for c, d in ((0.5, 0.5), (0.25, 0.75), (0.8, 0.9))]


def _label(pair: ZeroBalancedPair) -> str:
    return f"c={pair.c:g},d={pair.d:g}"


def _point(**coords: float) -> Dict[str, float]:
    return {k: float(v) for k, v in coords.items()}


def _unit_pair(pair: ZeroBalancedPair) -> bool:
    return pair.c == 1.0 and pair.d == 1.0


def _log_softplus(t: float) -> float:
    return math.log(float(r_fn(t)))


POWER_RATIO_FAMILIES = (
    ("exp", HConvexity.CONVEX, math.exp),
    ("log1p", HConvexity.CONCAVE, _log_softplus),
)


class CheckContext:
    """State of one check run: ledger, grids, parameters, details and notes"""

    def __init__(self, check_id: str, settings: RunSettings):
        self.check_id = check_id
        self.settings = settings
        self.ledger = MarginLedger(settings.tol)
        self.params: Dict[str, Any] = {}
        self.grids: Dict[str, GridSpec] = {}
        self.details: Dict[str, Any] = {}
        self.notes: List[str] = []
        self.exploratory = False
        self.partials: List[VerificationReport] = []

    @property
    def tol(self) -> float:
        return self.settings.tol

    def tighten(self, tol: float) -> None:
        """Use a smaller ledger tolerance for claims stated with explicit bounds"""
        self.ledger = MarginLedger(min(self.settings.tol, tol))

    def grid(self, name: str, n_points: Optional[int] = None) -> GridSpec:
        spec = self.settings.grid(name, n_points)
        self.grids[name] = spec
        return spec

    def custom_grid(
        self, name: str, lo: float, hi: float, n_points: int, spacing: Spacing = Spacing.LINEAR
    ) -> GridSpec:
        """Check-specific grid; a [grids.<name>] table or --grid-n still applies"""
        spec = self.settings.grids.get(name) or GridSpec(lo=lo, hi=hi, n_points=n_points, spacing=spacing)
        if self.settings.grid_n is not None:
            spec = spec.resized(self.settings.grid_n)
        self.grids[name] = spec
        return spec

    def mark_exploratory(self, note: str) -> None:
        self.exploratory = True
        if note not in self.notes:
            self.notes.append(note)

    def pairs(
        self,
        defaults: Sequence[ZeroBalancedPair],
        hypothesis: Optional[Callable[[ZeroBalancedPair], bool]] = None,
        requirement: str = "",
    ) -> List[ZeroBalancedPair]:
        override = self.settings.pair_override()
        if override is None:
            self.params["pairs"] = len(defaults)
            return list(defaults)
        self.params.update(override.key())
        if hypothesis is not None and not hypothesis(override):
            self.mark_exploratory(f"{_label(override)} is outside the hypothesis {requirement}")
        return [override]

    def zero_balanced(
        self,
        defaults: Sequence[ZeroBalancedPair],
        hypothesis: Optional[Callable[[ZeroBalancedPair], bool]] = None,
        requirement: str = "",
    ) -> List[HypParams]:
        """Parameters (a, b; a+b) with --c/--d standing for a and b"""
        return [pair.params for pair in self.pairs(defaults, hypothesis, requirement)]

    def exponents(
        self,
        defaults: Sequence[PhiExponents],
        hypothesis: Optional[Callable[[PhiExponents], bool]] = None,
        requirement: str = "",
    ) -> List[PhiExponents]:
        override = self.settings.exponents_override()
        if override is None:
            self.params["exponents"] = len(defaults)
            return list(defaults)
        self.params.update(override.key())
        if hypothesis is not None and not hypothesis(override):
            self.mark_exploratory(f"a={override.a:g}, b={override.b:g} is outside the hypothesis {requirement}")
        return [override]

    def each(self, fn: Callable[["CheckContext", Any], None], items: Sequence[Any]) -> None:
        """Run fn over items on the worker pool; each item fills its own ledger"""
        if not items:
            return

        def run_one(item: Any) -> "CheckContext":
            sub = CheckContext(self.check_id, self.settings)
            sub.ledger = MarginLedger(self.ledger.tol)
            fn(sub, item)
            return sub

        n_jobs = min(worker_count(), len(items))
        subs = Parallel(n_jobs=n_jobs, prefer="threads")(delayed(run_one)(item) for item in items)
        for sub in subs:
            self.grids.update(sub.grids)
            for note in sub.notes:
                if note not in self.notes:
                    self.notes.append(note)
            self.exploratory = self.exploratory or sub.exploratory
            self.partials.append(sub.ledger.report(self.check_id, details=sub.details))

    def finish(self, claim: str, exploratory: bool, runtime_ms: int) -> VerificationReport:
        parts = list(self.partials)
        if self.ledger.n_points or not parts:
            parts.append(self.ledger.report(self.check_id, details=self.details))
        merged = merge_reports(parts)
        status = merged.status
        if exploratory or self.exploratory:
            status = ReportStatus.EXPLORATORY
        data = merged.model_dump()
        data.update(
            claim=claim,
            params=dict(sorted(self.params.items())),
            grids=dict(sorted(self.grids.items())),
            details=merge_maps(merged.details, self.details),
            notes=self.notes,
            status=status,
            runtime_ms=runtime_ms,
        )
        return VerificationReport.model_validate(data)


class Check:
    def __init__(self, check_id: str, claim: str, run: Callable[[CheckContext], None], exploratory: bool):
        self.check_id = check_id
        self.claim = claim
        self.run = run
        self.exploratory = exploratory


_CHECKS: Dict[str, Check] = {}

# Short theorem labels accepted on the command line
CHECK_ALIASES: Dict[str, str] = {
    "bern": "bernoulli",
    "kmvthm": "phi-bernoulli",
    "ssthm2": "log-phi-bounds",
    "ssthm": "power-ratio-monotone",
    "2ndmain": "omega-monotone",
    "ssthm4": "omega-monotone",
    "myobs": "omega-sqrt-case",
    "finrmk1": "omega-outside-unit",
    "1.57-1": "zb-f1-increasing",
    "1.57-2": "zb-f2-decreasing",
    "1.57-3": "zb-f3-increasing",
    "1.57-4": "zb-f3-decreasing",
    "1.57-5": "zb-f4-decreasing",
    "1.57-6": "zb-f4-increasing",
    "1.57-7": "zb-f4-constant",
    "pvlem": "zb-f4-regimes",
    "kuLemma": "ratio-coeffs-convex",
    "mylemma1": "softplus-log-concave",
    "mylemma2": "zb-rescaled-argument",
    "ssthm5": "g-logistic-concave",
    "myrmk43": "g-logistic-inflection",
    "ssthm55": "beta-threshold",
    "my49": "g-half-below-one",
    "logconlemma": "g-power-over-p",
    "logcor": "g-power-ratio-bounds",
    "logcor1": "g-power-subadditive",
    "T-bound": "phi-g-bound",
    "ssthm7": "phi-g-inverse-bound",
    "myq3": "addition-ratio",
    "my44": "phi-g-constant-search",
    "my46": "beta-profile",
}


def check(check_id: str, claim: str, exploratory: bool = False):
    """Register a suite under check_id; registration order is the run order of `check all`"""

    def register(fn: Callable[[CheckContext], None]) -> Callable[[CheckContext], None]:
        _CHECKS[check_id] = Check(check_id, claim, fn, exploratory)
        return fn

    return register


def _widened(*errors: float) -> float:
    return ERROR_WIDENING * sum(errors)


# Special functions and hypergeometric evaluation


@check("golden-constants", "R(1/2,1/2) = log 16 and B(1/2,1/2) = pi to 1e-12; Euler's constant to 6 digits")
def golden_constants(ctx: CheckContext) -> None:
    ctx.tighten(STRICT_TOL)
    entries = (
        ("R(1/2,1/2)", r_constant(0.5, 0.5), 4.0 * LOG2, 1e-12),
        ("B(1/2,1/2)", beta(0.5, 0.5), math.pi, 1e-12),
        ("euler_gamma", EULER_GAMMA, 0.577215, 1e-6),
        ("psi(1)", digamma(1.0), -EULER_GAMMA, 1e-12),
        ("psi(1/2)", digamma(0.5), -EULER_GAMMA - 2.0 * LOG2, 1e-12),
        ("ln_gamma(1/2)", ln_gamma(0.5), 0.5 * math.log(math.pi), 1e-12),
        ("F(1,1;3;1)", f21_at_1(HypParams(a=1.0, b=1.0, c=3.0)), 2.0, 1e-12),
    )
    for index, (name, value, target, bound) in enumerate(entries):
        ctx.ledger.add(_point(index=index), abs(value - target), bound)
        ctx.details[name] = value


@check("closed-form-log", "x F(1,1;2;x) = log(1/(1-x)) to 1e-10 relative on [1e-6, 1-1e-4]")
def closed_form_log(ctx: CheckContext) -> None:
    ctx.tighten(STRICT_TOL)
    params = HypParams(a=1.0, b=1.0, c=2.0)
    grid = ctx.custom_grid("x_closed_form", 1e-6, NEAR_ONE_X, 1000)
    for x in grid.points():
        x = float(x)
        log1mx = math.log1p(-x)
        ctx.ledger.add(_point(x=x), abs(x * f21(params, x).value + log1mx), 1e-10 * abs(log1mx))


@check("euler-transform", "F(a,b;c;x) = (1-x)^(c-a-b) F(c-a,c-b;c;x) to 1e-10 relative for c < a+b")
def euler_transform(ctx: CheckContext) -> None:
    ctx.tighten(STRICT_TOL)
    grid = ctx.custom_grid("x_euler", 0.0, 0.9, 200)
    ctx.params["triples"] = len(EULER_TRIPLES)
    for a, b, c in EULER_TRIPLES:
        worst = 0.0
        for x in grid.points():
            x = float(x)
            where = _point(a=a, b=b, c=c, x=x)
            direct = hyp2f1_series(a, b, c, x)
            factor = (1.0 - x) ** (c - a - b)
            inner = hyp2f1_series(c - a, c - b, c, x)
            transformed = factor * inner.value
            allowance = _widened(direct.abs_err_estimate, factor * inner.abs_err_estimate)
            ctx.ledger.add(where, abs(direct.value - transformed), 1e-10 * abs(direct.value), allowance)
            worst = max(worst, abs(direct.value - transformed) / abs(direct.value))
            if x > EULER_SWITCH_X:
                routed = f21(HypParams(a=a, b=b, c=c), x)
                ctx.ledger.add(where, abs(routed.value - transformed), 1e-10 * abs(transformed), allowance)
        ctx.details[f"a={a:g},b={b:g},c={c:g}"] = {"max_relative_difference": worst}


@check("zb-boundary", "B F(a,b;a+b;x) + log(1-x) decreases from B at 0+ to R at 1-, continuously across the near-1 switch")
def zb_boundary(ctx: CheckContext) -> None:
    grid = ctx.grid("x")
    xs = grid.points()
    above = float(np.nextafter(NEAR_ONE_X, 1.0))
    for p in ctx.zero_balanced(ZB_ANY):
        where = _point(a=p.a, b=p.b)
        verdict = check_monotone(
            lambda x: f_ratio_eval(p, x, FRatio.F2), grid, MonotoneKind.DECREASING, slack=ctx.tol
        )
        ctx.ledger.add_monotone(where, verdict, "x")
        big_b, big_r = f_ratio_limits(p, FRatio.F2)
        first = f_ratio_eval(p, float(xs[0]), FRatio.F2)
        ctx.ledger.add(
            {**where, "x": float(xs[0])}, abs(first.value - big_b), ENDPOINT_TOL, _widened(first.abs_err_estimate)
        )
        series_side = f_ratio_eval(p, NEAR_ONE_X, FRatio.F2)
        asymptotic_side = f_ratio_eval(p, above, FRatio.F2)
        jump = abs(series_side.value - asymptotic_side.value)
        ctx.ledger.add(
            {**where, "x": NEAR_ONE_X},
            jump,
            0.0,
            _widened(series_side.abs_err_estimate, asymptotic_side.abs_err_estimate),
        )
        ctx.details[f"a={p.a:g},b={p.b:g}"] = {
            "verdict": verdict.kind.value,
            "at_0": first.value,
            "B": big_b,
            "R": big_r,
            "switch_jump": jump,
            "methods": [series_side.method.value, asymptotic_side.method.value],
        }


# Bernoulli-type inequalities and power ratios


@check("bernoulli", "log(1 + c t) <= c log(1 + t) for c >= 1, t > 0")
def bernoulli(ctx: CheckContext) -> None:
    identity = PhiExponents(a=1.0, b=1.0)
    ts = ctx.grid("t").points()
    for c in BERNOULLI_C:
        for t in ts:
            lhs, rhs = bernoulli_lhs_rhs(c, float(t), identity)
            ctx.ledger.add(_point(c=c, t=t), lhs, rhs)


@check("phi-bernoulli", "log(1 + c phi(t)) <= c max(log^a(1+t), b log(1+t)) for c >= 1, t > 0")
def phi_bernoulli(ctx: CheckContext) -> None:
    ts = ctx.grid("t").points()
    for e in ctx.exponents(BERNOULLI_EXPONENTS):
        for c in BERNOULLI_C:
            for t in ts:
                lhs, rhs = bernoulli_lhs_rhs(c, float(t), e)
                ctx.ledger.add(_point(a=e.a, b=e.b, c=c, t=t), lhs, rhs)


def _bound_grid(ctx: CheckContext) -> np.ndarray:
    grid = ctx.grid("s")
    return np.union1d(grid.points(), [1.0, E_MINUS_1, x0_root()])


def _record_bound_range(
    ctx: CheckContext, label: str, where: Dict[str, float], xs: np.ndarray, values: List[float], low: float
) -> None:
    for x, value in zip(xs, values):
        point = {**where, "x": float(x)}
        ctx.ledger.add(point, low, value)
        ctx.ledger.add(point, value, 1.0)
    i_min = int(np.argmin(values))
    i_one = int(np.searchsorted(xs, 1.0))
    ctx.ledger.add_expectation({**where, "x": float(xs[i_min])}, abs(i_min - i_one) <= 1)
    ctx.details[label] = {"lower_bound": low, "min": float(values[i_min]), "argmin": float(xs[i_min])}


@check("log-phi-bounds", "f1 bound in [(log 2)^(p(1-a)), 1] and f2 bound in [c3, 1], minima at x = 1")
def log_phi_bounds(ctx: CheckContext) -> None:
    xs = _bound_grid(ctx)
    a_values = (ctx.settings.a,) if ctx.settings.a is not None else BOUND_A
    p_values = (ctx.settings.p,) if ctx.settings.p is not None else BOUND_P
    ctx.params.update(ctx.settings.overrides())
    for a in a_values:
        for p in p_values:
            values = [f1_bound_fn(a, p, float(x)) for x in xs]
            _record_bound_range(ctx, f"f1 a={a:g},p={p:g}", _point(a=a, p=p), xs, values, LOG2 ** (p * (1.0 - a)))
        c3 = (LOG2 * math.log1p(LOG2)) ** (1.0 - a)
        values = [f2_bound_fn(a, float(x)) for x in xs]
        _record_bound_range(ctx, f"f2 a={a:g}", _point(a=a), xs, values, c3)


@check("power-ratio-monotone", "monotonicity of f(x^c)/f(x)^c follows the convexity of log f(e^t)")
def power_ratio_monotone(ctx: CheckContext) -> None:
    for region, (lo, hi) in POWER_RATIO_REGIONS.items():
        grid = ctx.custom_grid(f"x_{region.value}", lo, hi, SUITE_GRID_N)
        for (family, convexity, h), c in product(POWER_RATIO_FAMILIES, POWER_RATIO_EXPONENTS):
            prediction = power_ratio_prediction(convexity, c, region)
            verdict = check_monotone(
                lambda x: log_power_ratio(h, c, x), grid, prediction, slack=ctx.tol
            )
            ctx.ledger.add_monotone(_point(c=c), verdict, "x")
            ctx.details[f"{family} c={c:.4g} {region.value}"] = {
                "predicted": prediction.value,
                "verdict": verdict.kind.value,
            }


# omega(c, d, p, r)


@check("omega-monotone", "omega(c,d,p,r) is nondecreasing in p for r in (0,1) when 1/c + 1/d >= 1")
def omega_monotone(ctx: CheckContext) -> None:
    pairs = ctx.pairs(ADMISSIBLE_PAIRS, lambda pair: pair.admissible, "1/c + 1/d >= 1")
    r_values = ctx.grid("r").points()
    p_grid = ctx.grid("p")

    def one_pair(sub: CheckContext, pair: ZeroBalancedPair) -> None:
        for r in r_values:
            r = float(r)
            verdict = check_monotone(
                lambda p: omega_eval(pair, p, r), p_grid, MonotoneKind.INCREASING, slack=sub.tol
            )
            sub.ledger.add_monotone(_point(c=pair.c, d=pair.d, r=r), verdict, "p")

    ctx.each(one_pair, pairs)


@check("omega-sqrt-case", "g(sqrt(r)/(1+sqrt(r))) <= g(r/(1+r))^(1/2) for r in (0,1) when 1/c + 1/d >= 1")
def omega_sqrt_case(ctx: CheckContext) -> None:
    pairs = ctx.pairs(ADMISSIBLE_PAIRS[::5], lambda pair: pair.admissible, "1/c + 1/d >= 1")
    grid = ctx.custom_grid("r_sqrt", 1e-3, 0.999, 200)
    for pair in pairs:
        for r in grid.points():
            half = g_power(pair, float(r), 0.5)
            full = g_power(pair, float(r), 1.0)
            rhs = math.sqrt(full.value)
            allowance = _widened(half.abs_err_estimate, 0.5 * full.abs_err_estimate / rhs)
            ctx.ledger.add(_point(c=pair.c, d=pair.d, r=r), half.value, rhs, allowance)


@check("omega-outside-unit", "for c = d = 1 and r = 4, omega is not monotone in p")
def omega_outside_unit(ctx: CheckContext) -> None:
    pairs = ctx.pairs([_pair(1.0, 1.0)], _unit_pair, "c = d = 1")
    logger.warning("omega-outside-unit evaluates omega at r=%g, outside the unit interval", OUTSIDE_UNIT_R)
    ctx.notes.append(f"omega evaluated at r={OUTSIDE_UNIT_R:g}, outside the unit interval")
    grid = ctx.custom_grid("p_outside_unit", 0.25, 8.0, 256, Spacing.LOG)
    for pair in pairs:
        values = {}
        for p, rounded in OUTSIDE_UNIT_VALUES.items():
            value = omega_eval(pair, p, OUTSIDE_UNIT_R)
            where = _point(c=pair.c, d=pair.d, p=p)
            values[f"p={p:g}"] = value.value
            ctx.ledger.add(where, abs(value.value - rounded), 5e-3)
            if pair.c == 1.0 and pair.d == 1.0:
                ctx.ledger.add(
                    where, abs(value.value - OUTSIDE_UNIT_CLOSED_FORMS[p]), 1e-10, _widened(value.abs_err_estimate)
                )
        verdict = check_monotone(
            lambda p: omega_eval(pair, p, OUTSIDE_UNIT_R), grid, MonotoneKind.INCREASING, slack=ctx.tol
        )
        ctx.ledger.add_expectation(
            _point(c=pair.c, d=pair.d, p=verdict.witness or 0.0), verdict.kind is MonotoneKind.NON_MONOTONE
        )
        ctx.details[_label(pair)] = {"omega": values, "verdict": verdict.kind.value, "witness": verdict.witness}


# Zero-balanced ratios f1 .. f4


def _f_ratio_suite(
    ctx: CheckContext,
    which: FRatio,
    direction: MonotoneKind,
    defaults: Sequence[ZeroBalancedPair],
    hypothesis: Optional[Callable[[ZeroBalancedPair], bool]] = None,
    requirement: str = "",
) -> None:
    grid = ctx.grid("x")
    xs = grid.points()
    for p in ctx.zero_balanced(defaults, hypothesis, requirement):
        where = _point(a=p.a, b=p.b)
        verdict = check_monotone(lambda x: f_ratio_eval(p, x, which), grid, direction, slack=ctx.tol)
        ctx.ledger.add_monotone(where, verdict, "x")
        limit_0, limit_1 = f_ratio_limits(p, which)
        first = f_ratio_eval(p, float(xs[0]), which)
        last = f_ratio_eval(p, float(xs[-1]), which)
        ctx.ledger.add(
            {**where, "x": float(xs[0])}, abs(first.value - limit_0), ENDPOINT_TOL, _widened(first.abs_err_estimate)
        )
        # f1 and f4 approach their 1- limits only like 1/log(1/(1-x))
        if which in (FRatio.F2, FRatio.F3):
            ctx.ledger.add(
                {**where, "x": float(xs[-1])},
                abs(last.value - limit_1),
                ENDPOINT_TOL,
                _widened(last.abs_err_estimate),
            )
        ctx.details[f"a={p.a:g},b={p.b:g}"] = {
            "verdict": verdict.kind.value,
            "at_0": first.value,
            "limit_0": limit_0,
            "at_1": last.value,
            "limit_1": limit_1,
        }


def _both_below_one(pair: ZeroBalancedPair) -> bool:
    return pair.c < 1.0 and pair.d < 1.0


def _both_above_one(pair: ZeroBalancedPair) -> bool:
    return pair.c > 1.0 and pair.d > 1.0


@check("zb-f1-increasing", "(F(a,b;a+b;x) - 1)/log(1/(1-x)) increases from ab/(a+b) to 1/B")
def zb_f1_increasing(ctx: CheckContext) -> None:
    _f_ratio_suite(ctx, FRatio.F1, MonotoneKind.INCREASING, ZB_ANY)


@check("zb-f2-decreasing", "B F(a,b;a+b;x) + log(1-x) decreases from B to R")
def zb_f2_decreasing(ctx: CheckContext) -> None:
    _f_ratio_suite(ctx, FRatio.F2, MonotoneKind.DECREASING, ZB_ANY)


@check("zb-f3-increasing", "B F(a,b;a+b;x) + log(1-x)/x increases from B-1 to R for a, b in (0,1)")
def zb_f3_increasing(ctx: CheckContext) -> None:
    _f_ratio_suite(ctx, FRatio.F3, MonotoneKind.INCREASING, ZB_BELOW_ONE, _both_below_one, "a, b in (0, 1)")


@check("zb-f3-decreasing", "B F(a,b;a+b;x) + log(1-x)/x decreases from B-1 to R for a, b > 1")
def zb_f3_decreasing(ctx: CheckContext) -> None:
    _f_ratio_suite(ctx, FRatio.F3, MonotoneKind.DECREASING, ZB_ABOVE_ONE, _both_above_one, "a, b > 1")


@check("zb-f4-decreasing", "x F(a,b;a+b;x)/log(1/(1-x)) decreases from 1 to 1/B for a, b in (0,1)")
def zb_f4_decreasing(ctx: CheckContext) -> None:
    _f_ratio_suite(ctx, FRatio.F4, MonotoneKind.DECREASING, ZB_BELOW_ONE, _both_below_one, "a, b in (0, 1)")


@check("zb-f4-increasing", "x F(a,b;a+b;x)/log(1/(1-x)) increases from 1 to 1/B for a, b > 1")
def zb_f4_increasing(ctx: CheckContext) -> None:
    _f_ratio_suite(ctx, FRatio.F4, MonotoneKind.INCREASING, ZB_ABOVE_ONE, _both_above_one, "a, b > 1")


@check("zb-f4-constant", "x F(1,1;2;x)/log(1/(1-x)) = 1 to 1e-10")
def zb_f4_constant(ctx: CheckContext) -> None:
    ctx.tighten(STRICT_TOL)
    xs = ctx.grid("x").points()
    for p in ctx.zero_balanced([_pair(1.0, 1.0)], _unit_pair, "a = b = 1"):
        for x in xs:
            value = f_ratio_eval(p, float(x), FRatio.F4)
            ctx.ledger.add(
                _point(a=p.a, b=p.b, x=x), abs(value.value - 1.0), 1e-10, _widened(value.abs_err_estimate)
            )


def _f4_regime(pair: ZeroBalancedPair) -> Optional[MonotoneKind]:
    if pair.c * pair.d <= 1.0 + 1e-12:
        return MonotoneKind.DECREASING
    if pair.c > 0.5 and pair.d >= pair.c / (2.0 * pair.c - 1.0) - 1e-12:
        return MonotoneKind.INCREASING
    return None


@check(
    "zb-f4-regimes",
    "x F(c,d;c+d;x)/log(1/(1-x)) decreases when d <= 1/c and increases when c > 1/2, d >= c/(2c-1)",
)
def zb_f4_regimes(ctx: CheckContext) -> None:
    grid = ctx.grid("x")
    for pair in ctx.pairs(F4_REGIME_PAIRS):
        direction = _f4_regime(pair)
        if direction is None:
            ctx.mark_exploratory(f"{_label(pair)} lies in neither monotonicity regime")
            direction = MonotoneKind.INCREASING
        verdict = check_monotone(
            lambda x: f_ratio_eval(pair.params, x, FRatio.F4), grid, direction, slack=ctx.tol
        )
        ctx.ledger.add_monotone(pair.key(), verdict, "x")
        points = grid.points()
        ctx.details[_label(pair)] = {
            "expected": direction.value,
            "verdict": verdict.kind.value,
            "at_0": f_ratios(pair.params, float(points[0]), FRatio.F4),
            "at_1": f_ratios(pair.params, float(points[-1]), FRatio.F4),
        }


@check("ratio-coeffs-convex", "coefficients of F'/F are nonincreasing and convex when max(a, b) <= c")
def ratio_coeffs_convex(ctx: CheckContext) -> None:
    ctx.tighten(STRICT_TOL)
    s = ctx.settings
    triples = RATIO_TRIPLES
    if s.a is not None and s.b is not None and s.c is not None:
        triples = ((s.a, s.b, s.c),)
        ctx.params.update(a=s.a, b=s.b, c=s.c)
        if max(s.a, s.b) > s.c:
            ctx.mark_exploratory(f"a={s.a:g}, b={s.b:g}, c={s.c:g} is outside the hypothesis max(a, b) <= c")
    else:
        ctx.params["triples"] = len(triples)
    ctx.params["N"] = RATIO_ORDER
    for a, b, c in triples:
        p = HypParams(a=a, b=b, c=c)
        coeffs = ratio_coeffs(p, RATIO_ORDER).as_array()
        t = series_coeffs(p, RATIO_ORDER + 1).as_array()
        d = np.arange(1, RATIO_ORDER + 2, dtype=float) * t[1:]
        first = np.diff(coeffs)
        second = coeffs[:-2] - 2.0 * coeffs[1:-1] + coeffs[2:]
        residual = np.convolve(coeffs, t[: RATIO_ORDER + 1])[: RATIO_ORDER + 1] - d[: RATIO_ORDER + 1]
        for n, step in enumerate(first):
            ctx.ledger.add(_point(a=a, b=b, c=c, n=n + 1), float(step), COEFF_SLACK)
        for n, curvature in enumerate(second):
            ctx.ledger.add(_point(a=a, b=b, c=c, n=n + 1), -float(curvature), COEFF_SLACK)
        for n, (res, dn) in enumerate(zip(residual, d)):
            ctx.ledger.add(_point(a=a, b=b, c=c, n=n), abs(float(res)), COEFF_SLACK * max(1.0, abs(float(dn))))
        ctx.details[f"a={a:g},b={b:g},c={c:g}"] = {
            "a_0": float(coeffs[0]),
            "a_N": float(coeffs[-1]),
            "max_reconstruction_residual": float(np.max(np.abs(residual))),
        }


@check("softplus-log-concave", "w(x) > 0 and log v(x) is concave, v = log(1 + log(1 + e^x))")
def softplus_log_concave(ctx: CheckContext) -> None:
    grid = ctx.custom_grid("x_softplus", -20.0, 20.0, ctx.settings.default_grid_n)
    xs = grid.points()
    w = w_fn(xs)
    for x, value in zip(xs, w):
        ctx.ledger.add(_point(x=x), 0.0, float(value))
    i_min = int(np.argmin(w))
    ctx.ledger.add_expectation(_point(x=xs[i_min]), bool(w[i_min] > 0.0))
    verdict = check_concavity(lambda x: math.log(float(v_fn(x))), grid, slack=ctx.tol)
    ctx.ledger.add_concave({}, verdict, "x")
    ctx.details.update(
        min_w=float(w[i_min]),
        argmin_w=float(xs[i_min]),
        log_v_verdict=verdict.kind.value,
        max_second_difference=verdict.max_second_difference,
    )


@check("zb-rescaled-argument", "with z = 1-(1-x)^(1/p): B h(z) >= B h(x) >= 1 and F(z) >= F(x)/p for c, d in (0,1], p >= 1")
def zb_rescaled_argument(ctx: CheckContext) -> None:
    pairs = ctx.pairs(RESCALE_PAIRS, lambda pair: pair.c <= 1.0 and pair.d <= 1.0, "c, d in (0, 1]")
    powers = RESCALE_POWERS
    if ctx.settings.p is not None:
        powers = (ctx.settings.p,)
        ctx.params["p"] = ctx.settings.p
        if ctx.settings.p < 1.0:
            ctx.mark_exploratory(f"p={ctx.settings.p:g} is outside the hypothesis p >= 1")
    grid = ctx.custom_grid("x_rescaled", 1e-4, 0.999, SUITE_GRID_N)
    for pair, p in product(pairs, powers):
        params = pair.params
        big_b = beta(pair.c, pair.d)
        for x in grid.points():
            x = float(x)
            z = rescaled_argument(x, p)
            where = _point(c=pair.c, d=pair.d, p=p, x=x)
            hz = f_ratio_eval(params, z, FRatio.F4)
            hx = f_ratio_eval(params, x, FRatio.F4)
            fz = f21(params, z)
            fx = f21(params, x)
            ctx.ledger.add(where, big_b * hz.value, big_b, _widened(big_b * hz.abs_err_estimate))
            ctx.ledger.add(
                where, big_b * hx.value, big_b * hz.value, _widened(big_b * (hx.abs_err_estimate + hz.abs_err_estimate))
            )
            ctx.ledger.add(where, 1.0, big_b * hx.value, _widened(big_b * hx.abs_err_estimate))
            ctx.ledger.add(where, fx.value / p, fz.value, _widened(fx.abs_err_estimate / p, fz.abs_err_estimate))


# G(u) = log g(e^u/(1+e^u)) and the beta threshold


def _concavity_suite(ctx: CheckContext, pairs: Sequence[ZeroBalancedPair], require_inflection: bool) -> None:
    grid = ctx.grid("u", n_points=SUITE_GRID_N)

    def one_pair(sub: CheckContext, pair: ZeroBalancedPair) -> None:
        verdict = check_concavity(lambda u: big_g_eval(pair, u), grid, slack=sub.tol)
        where = pair.key()
        if pair.admissible:
            sub.ledger.add_concave(where, verdict, "u")
        else:
            sub.ledger.add_neither(where, verdict, "u")
            if require_inflection:
                sub.ledger.add_expectation({**where, "u": verdict.witness or 0.0}, bool(verdict.inflections))
        sub.details[_label(pair)] = {
            "a0": pair.a0,
            "expected": "concave" if pair.admissible else "neither",
            "verdict": verdict.kind.value,
            "witness": verdict.witness,
            "inflections": verdict.inflections,
        }

    ctx.each(one_pair, pairs)


@check("g-logistic-concave", "G(u) = log g(e^u/(1+e^u)) is concave on R if and only if 1/c + 1/d >= 1")
def g_logistic_concave(ctx: CheckContext) -> None:
    _concavity_suite(ctx, ctx.pairs(ADMISSIBLE_PAIRS[::2] + INFLECTION_PAIRS), require_inflection=False)


@check("g-logistic-inflection", "G has an inflection point when cd/(c+d) > 1")
def g_logistic_inflection(ctx: CheckContext) -> None:
    _concavity_suite(ctx, ctx.pairs(INFLECTION_PAIRS), require_inflection=True)


@check("beta-threshold", "beta > 1/2 when (a0-1)/h <= c0 and beta < 1/2 when (a0-1)/h >= c1")
def beta_threshold(ctx: CheckContext) -> None:
    defaults = [_pair(c, d) for c in BETA_GRID for d in BETA_GRID if c <= d] + [INCONCLUSIVE_PAIR]
    pairs = ctx.pairs(defaults)
    exponents = ctx.exponents(BETA_EXPONENTS)
    ctx.details["predictions"] = dict(sorted(Counter(threshold_predicate(p).value for p in pairs).items()))

    def one_pair(sub: CheckContext, pair: ZeroBalancedPair) -> None:
        prediction = threshold_predicate(pair)
        sub.ledger.add(pair.key(), abs(ratio_coeff_gap(pair)), COEFF_SLACK)
        g_half = g_fn(pair, 0.5)
        betas = {}
        for e in exponents:
            value = beta_root(pair, e)
            where = {**pair.key(), **e.key()}
            betas[f"a={e.a:g},b={e.b:g}"] = value
            if prediction is ThresholdPrediction.PREDICT_GT:
                sub.ledger.add(where, 0.5, value)
            elif prediction is ThresholdPrediction.PREDICT_LT:
                sub.ledger.add(where, value, 0.5)
            sub.ledger.add_expectation(where, (value > 0.5) == (g_half < 1.0))
        sub.details[_label(pair)] = {
            "prediction": prediction.value,
            "ratio": threshold_ratio(pair),
            "g_half": g_half,
            "beta": betas,
        }

    ctx.each(one_pair, pairs)


@check("g-half-below-one", "g(1/2) < 1 when 1/c + 1/d >= 1")
def g_half_below_one(ctx: CheckContext) -> None:
    pairs = ctx.pairs(ADMISSIBLE_PAIRS, lambda pair: pair.admissible, "1/c + 1/d >= 1")
    for pair in pairs:
        value = g_eval(pair, 0.5)
        ctx.ledger.add(pair.key(), value.value, 1.0, _widened(value.abs_err_estimate))
    if ctx.settings.pair_override() is None:
        ctx.details["g_half_above_threshold"] = {_label(pair): g_fn(pair, 0.5) for pair in INFLECTION_PAIRS}


# g(s^p/(1+s^p)) in p and s


def _product_pairs(ctx: CheckContext, defaults: Sequence[ZeroBalancedPair] = PRODUCT_PAIRS) -> List[ZeroBalancedPair]:
    return ctx.pairs(defaults, lambda pair: pair.product_at_most_one, "cd <= 1")


@check("g-power-over-p", "g(s^p/(1+s^p))/p is nonincreasing in p when cd <= 1")
def g_power_over_p(ctx: CheckContext) -> None:
    pairs = _product_pairs(ctx)
    p_grid = ctx.grid("p")
    for pair, s in product(pairs, S_VALUES):
        verdict = check_monotone(
            lambda p: g_power(pair, s, p).scaled(1.0 / p), p_grid, MonotoneKind.DECREASING, slack=ctx.tol
        )
        ctx.ledger.add_monotone(_point(c=pair.c, d=pair.d, s=s), verdict, "p")


def _exponent_pairs(ctx: CheckContext, defaults: Sequence[Tuple[float, float]]) -> Sequence[Tuple[float, float]]:
    s = ctx.settings
    if s.a is None or s.b is None:
        ctx.params["exponents"] = len(defaults)
        return defaults
    ctx.params.update(a=s.a, b=s.b)
    return ((s.a, s.b),)


@check("g-power-ratio-bounds", "1 <= g(s^b/(1+s^b))/g(s^a/(1+s^a)) <= b/a for s >= 1, b >= a > 0, cd <= 1")
def g_power_ratio_bounds(ctx: CheckContext) -> None:
    pairs = _product_pairs(ctx)
    exponents = _exponent_pairs(ctx, RATIO_BOUND_EXPONENTS)
    for a, b in exponents:
        if b < a:
            ctx.mark_exploratory(f"a={a:g}, b={b:g} is outside the hypothesis b >= a")
    grid = ctx.custom_grid("s_above_1", 1.0, 1e4, SUITE_GRID_N, Spacing.LOG)
    for pair, (a, b) in product(pairs, exponents):
        for s in grid.points():
            ga = g_power(pair, float(s), a)
            gb = g_power(pair, float(s), b)
            ratio = gb.value / ga.value
            allowance = _widened(ratio * (ga.abs_err_estimate / ga.value + gb.abs_err_estimate / gb.value))
            where = _point(c=pair.c, d=pair.d, a=a, b=b, s=s)
            ctx.ledger.add(where, 1.0, ratio, allowance)
            ctx.ledger.add(where, ratio, b / a, allowance)


@check("g-power-subadditive", "g(s^p/(1+s^p)) + g(s^q/(1+s^q)) >= g(s^(p+q)/(1+s^(p+q))) when cd <= 1")
def g_power_subadditive(ctx: CheckContext) -> None:
    pairs = _product_pairs(ctx)
    grid = ctx.grid("s", n_points=256)
    for pair, (p, q) in product(pairs, SUBADDITIVE_EXPONENTS):
        for s in grid.points():
            gp = g_power(pair, float(s), p)
            gq = g_power(pair, float(s), q)
            gpq = g_power(pair, float(s), p + q)
            ctx.ledger.add(
                _point(c=pair.c, d=pair.d, p=p, q=q, s=s),
                gpq.value,
                gp.value + gq.value,
                _widened(gp.abs_err_estimate, gq.abs_err_estimate, gpq.abs_err_estimate),
            )


@check("g-power-log-concave", "g(x^p/(1+x^p)) g(x^q/(1+x^q)) <= g(x^m/(1+x^m))^2, m = (p+q)/2, when 1/c + 1/d >= 1")
def g_power_log_concave(ctx: CheckContext) -> None:
    pairs = ctx.pairs(ADMISSIBLE_PAIRS[::5], lambda pair: pair.admissible, "1/c + 1/d >= 1")
    grid = ctx.grid("s", n_points=256)
    for pair, (p, q) in product(pairs, LOG_CONCAVE_EXPONENTS):
        for x in grid.points():
            t = math.log(float(x))
            gp = big_g_eval(pair, p * t)
            gq = big_g_eval(pair, q * t)
            gm = big_g_eval(pair, 0.5 * (p + q) * t)
            ctx.ledger.add(
                _point(c=pair.c, d=pair.d, p=p, q=q, x=x),
                gp.value + gq.value,
                2.0 * gm.value,
                _widened(gp.abs_err_estimate, gq.abs_err_estimate, 2.0 * gm.abs_err_estimate),
            )


# T(s) and t(s)


def _phi_g_suite(
    ctx: CheckContext,
    fn: Callable[[ZeroBalancedPair, PhiExponents, float, float], float],
    bound: Callable[[PhiExponents], float],
) -> None:
    pairs = _product_pairs(ctx)
    exponents = ctx.exponents(PHI_EXPONENTS, lambda e: e.a < 1.0 < e.b, "0 < a < 1 < b")
    grid = ctx.grid("s", n_points=SUITE_GRID_N)

    def one_pair(sub: CheckContext, pair: ZeroBalancedPair) -> None:
        try:
            gamma = gamma_root(pair)
        except (DomainError, ContractError) as e:
            sub.mark_exploratory(f"{_label(pair)}: {e}")
            return
        ss = np.union1d(grid.points(), [1.0, gamma])
        for e in exponents:
            values = np.array([fn(pair, e, float(s), gamma) for s in ss])
            limit = bound(e)
            for s, value in zip(ss, values):
                where = _point(c=pair.c, d=pair.d, a=e.a, b=e.b, s=s)
                sub.ledger.add(where, float(value), limit)
                if s <= 1.0:
                    sub.ledger.add(where, float(value), 1.0)
            i_sup = int(np.argmax(values))
            sub.details[f"{_label(pair)},a={e.a:g},b={e.b:g}"] = {
                "gamma": gamma,
                "sup": float(values[i_sup]),
                "argsup": float(ss[i_sup]),
                "bound": limit,
            }

    ctx.each(one_pair, pairs)


@check("phi-g-bound", "T(s) <= b/a on s > 0, and T(s) <= 1 for s <= 1, when cd <= 1 and 0 < a < 1 < b")
def phi_g_bound(ctx: CheckContext) -> None:
    _phi_g_suite(ctx, T_fn, lambda e: e.b / e.a)


@check("phi-g-inverse-bound", "t(s) <= b on s > 0, and t(s) <= 1 for s <= 1, when cd <= 1 and 0 < a < 1 < b")
def phi_g_inverse_bound(ctx: CheckContext) -> None:
    _phi_g_suite(ctx, t_fn, lambda e: e.b)


# Exploratory


@check(
    "addition-ratio",
    "h(x,y) = (g(x)+g(y))/g(x+y-xy): h >= 1 when cd <= 1, h <= 1 when c, d > 1, h = 1 when c = d = 1",
    exploratory=True,
)
def addition_ratio(ctx: CheckContext) -> None:
    pairs = ctx.pairs(PRODUCT_PAIRS + ADDITION_ABOVE_ONE)
    xs = ctx.custom_grid("xy", 0.01, 0.99, 40).points()

    def one_pair(sub: CheckContext, pair: ZeroBalancedPair) -> None:
        if pair.c == 1.0 and pair.d == 1.0:
            expectation = "h = 1"
        elif pair.product_at_most_one:
            expectation = "h >= 1"
        elif _both_above_one(pair):
            expectation = "h <= 1"
        else:
            expectation = "none"
        hs, ds = [], []
        for x, y in product(xs, xs):
            x, y = float(x), float(y)
            _, rhs, err = addition_terms_eval(pair, x, y)
            h = h_xy(pair, x, y)
            hs.append(h)
            ds.append(d_xy(pair, x, y))
            where = _point(c=pair.c, d=pair.d, x=x, y=y)
            allowance = _widened(err / rhs)
            if expectation == "h = 1":
                sub.ledger.add(where, abs(h - 1.0), 1e-10, allowance)
            elif expectation == "h >= 1":
                sub.ledger.add(where, 1.0 - ADDITION_SLACK, h, allowance)
            elif expectation == "h <= 1":
                sub.ledger.add(where, h, 1.0 + ADDITION_SLACK, allowance)
        sub.details[_label(pair)] = {
            "expectation": expectation,
            "min_h": min(hs),
            "max_h": max(hs),
            "min_d": min(ds),
            "max_d": max(ds),
        }

    ctx.each(one_pair, pairs)


@check(
    "phi-g-constant-search",
    "empirical sup of T(s) against the constants b/a and b^2/a",
    exploratory=True,
)
def phi_g_constant_search(ctx: CheckContext) -> None:
    pairs = ctx.pairs(CONSTANT_SEARCH_PAIRS)
    exponents = ctx.exponents(PHI_EXPONENTS)
    ss = ctx.grid("s", n_points=SUITE_GRID_N).points()

    def one_pair(sub: CheckContext, pair: ZeroBalancedPair) -> None:
        gamma = gamma_root(pair) if pair.product_at_most_one else None
        for e in exponents:
            values = np.array([phi_g_ratio(pair, e, float(s)) for s in ss])
            sup = float(np.max(values))
            constants = {"b/a": e.b / e.a, "b^2/a": e.b**2 / e.a}
            for s, value in zip(ss, values):
                sub.ledger.add(_point(c=pair.c, d=pair.d, a=e.a, b=e.b, s=s), float(value), constants["b/a"])
            holding = [name for name, value in sorted(constants.items(), key=lambda kv: kv[1]) if sup <= value]
            entry: Dict[str, Any] = {
                "sup": sup,
                "argsup": float(ss[int(np.argmax(values))]),
                **constants,
                "sharpest": holding[0] if holding else None,
            }
            if gamma is not None and gamma > 1.0:
                piecewise = np.array([T_fn(pair, e, float(s), gamma) for s in ss])
                entry["max_piecewise_difference"] = float(np.max(np.abs(piecewise - values)))
            sub.details[f"{_label(pair)},a={e.a:g},b={e.b:g}"] = entry

    ctx.each(one_pair, pairs)


@check(
    "beta-profile",
    "t(x) = g(x)/(b phi(g(...))): monotone pieces on (0,1/2], [1/2,beta], [beta,1), bounds t(x) >= min(t(1/2), t(1-)) and t(x) <= t(beta)",
    exploratory=True,
)
def beta_profile(ctx: CheckContext) -> None:
    pairs = ctx.pairs(BETA_PROFILE_PAIRS)
    exponents = ctx.exponents(PHI_EXPONENTS)
    grid = ctx.custom_grid("x_profile", 1e-3, 0.999, SUITE_GRID_N)
    xs = grid.points()

    def one_pair(sub: CheckContext, pair: ZeroBalancedPair) -> None:
        for e in exponents:
            beta_value = beta_root(pair, e)
            gamma_value = None
            if pair.product_at_most_one:
                # g(y/(1+y)) = 1 at y = phi^-1(beta/(1-beta)), so y is the gamma root
                y_beta = phi_inv(e, beta_value / (1.0 - beta_value))
                gamma_value = gamma_root(pair)
                root_point = _point(c=pair.c, d=pair.d, a=e.a, b=e.b)
                sub.ledger.add(root_point, abs(y_beta - gamma_value), 1e-9 * gamma_value)
            ratio = partial(t_ratio_x, pair, e)
            ts = np.array([ratio(float(x)) for x in xs])
            t_half, t_beta, t_end = ratio(0.5), ratio(beta_value), float(ts[-1])
            pieces = {}
            for name, lo, hi in (("left", float(xs[0]), 0.5), ("middle", 0.5, beta_value), ("right", beta_value, float(xs[-1]))):
                if hi - lo > 1e-6:
                    piece = GridSpec(lo=lo, hi=hi, n_points=max(3, grid.n_points // 3))
                    pieces[name] = check_monotone(ratio, piece, MonotoneKind.INCREASING, slack=sub.tol).kind.value
            floor = min(t_half, t_end)
            for x, t in zip(xs, ts):
                where = _point(c=pair.c, d=pair.d, a=e.a, b=e.b, x=x)
                sub.ledger.add(where, floor, float(t))
                sub.ledger.add(where, float(t), t_beta)
                lhs, rhs = phi_g_inequality(pair, e, float(x))
                sub.ledger.add(where, lhs, rhs)
            sub.details[f"{_label(pair)},a={e.a:g},b={e.b:g}"] = {
                "beta": beta_value,
                "gamma": gamma_value,
                "t_half": t_half,
                "t_beta": t_beta,
                "t_end": t_end,
                "pieces": pieces,
            }

    ctx.each(one_pair, pairs)


class VerificationService:
    """Runs registered checks and assembles their reports"""

    def check_ids(self) -> List[str]:
        return list(_CHECKS)

    def claim(self, check_id: str) -> str:
        return self._lookup(check_id).claim

    def resolve(self, check_id: str) -> str:
        """Registered id for check_id, which may be a theorem label from CHECK_ALIASES"""
        resolved = CHECK_ALIASES.get(check_id, check_id)
        if resolved not in _CHECKS:
            raise UsageError(f"Unknown check id {check_id!r}; known ids: {', '.join(_CHECKS)}")
        return resolved

    def _lookup(self, check_id: str) -> Check:
        return _CHECKS[self.resolve(check_id)]

    def run(self, check_id: str, settings: RunSettings) -> VerificationReport:
        """
        Run one check

        Args:
            check_id: Registered identifier or theorem label
            settings: Merged run settings

        Returns:
            VerificationReport; runtime_ms stays 0 unless timing was requested
        """
        entry = self._lookup(check_id)
        logger.info("Running check %s", entry.check_id)
        start = time.perf_counter()
        ctx = CheckContext(entry.check_id, settings)
        entry.run(ctx)
        elapsed = int(round((time.perf_counter() - start) * 1000)) if settings.timing else 0
        report = ctx.finish(entry.claim, entry.exploratory, elapsed)
        logger.info("Check %s finished: %s (worst margin %.3g)", entry.check_id, report.status.value, report.worst_margin)
        return report

    def run_all(self, settings: RunSettings) -> List[VerificationReport]:
        """Every registered check, in registration order"""
        ids = self.check_ids()
        return Parallel(n_jobs=min(worker_count(), len(ids)), prefer="threads")(
            delayed(self.run)(check_id, settings) for check_id in ids
        )


# Create singleton instance
verification_service = VerificationService()
