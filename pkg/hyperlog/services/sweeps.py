"""
Named LHS/RHS sweeps written to CSV
"""

import logging
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from hyperlog.core.config import SUITE_GRID_N, worker_count
from hyperlog.core.errors import OutputError, UsageError
from hyperlog.models import PhiExponents, RunSettings, SweepDocument, ZeroBalancedPair
from hyperlog.services.logtype import addition_terms, omega, phi_g_ratio, phi_g_terms
from hyperlog.services.suites import CheckContext

logger = logging.getLogger(__name__)

Row = Dict[str, float]
RowBuilder = Callable[[CheckContext, ZeroBalancedPair, PhiExponents], List[Row]]

DEFAULT_PAIR = ZeroBalancedPair(c=1.0, d=1.0)
DEFAULT_EXPONENTS = PhiExponents(a=0.5, b=2.0)
ADDITION_GRID_N = 64


def _pool_map(fn, items) -> list:
    """Ordered map over the worker pool"""
    items = list(items)
    if not items:
        return []
    return Parallel(n_jobs=min(worker_count(), len(items)), prefer="threads")(delayed(fn)(item) for item in items)


def _addition_rows(ctx: CheckContext, pair: ZeroBalancedPair, e: PhiExponents) -> List[Row]:
    xs = ctx.custom_grid("xy", 0.01, 0.99, ADDITION_GRID_N).points()

    def row_block(x: float) -> List[Row]:
        block = []
        for y in xs:
            lhs, rhs = addition_terms(pair, float(x), float(y))
            block.append({"x": float(x), "y": float(y), "lhs": lhs, "rhs": rhs})
        return block

    return [row for block in _pool_map(row_block, xs) for row in block]


def _phi_g_constant_rows(ctx: CheckContext, pair: ZeroBalancedPair, e: PhiExponents) -> List[Row]:
    ss = ctx.grid("s", n_points=SUITE_GRID_N).points()
    values = _pool_map(lambda s: phi_g_ratio(pair, e, float(s)), ss)
    return [{"s": float(s), "lhs": value, "rhs": e.b / e.a} for s, value in zip(ss, values)]


def _beta_profile_rows(ctx: CheckContext, pair: ZeroBalancedPair, e: PhiExponents) -> List[Row]:
    xs = ctx.custom_grid("x_profile", 1e-3, 0.999, SUITE_GRID_N).points()
    terms = _pool_map(lambda x: phi_g_terms(pair, e, float(x)), xs)
    return [{"x": float(x), "lhs": gx, "rhs": e.b * phig} for x, (gx, phig) in zip(xs, terms)]


def _omega_rows(ctx: CheckContext, pair: ZeroBalancedPair, e: PhiExponents) -> List[Row]:
    rs = ctx.grid("r").points()
    ps = ctx.grid("p").points()

    def row_block(r: float) -> List[Row]:
        values = [omega(pair, float(p), float(r)) for p in ps]
        return [
            {"r": float(r), "p": float(p), "lhs": values[i], "rhs": values[i + 1]}
            for i, p in enumerate(ps[:-1])
        ]

    return [row for block in _pool_map(row_block, rs) for row in block]


class Sweep:
    def __init__(self, name: str, claim: str, build: RowBuilder, gap_only: bool = False):
        self.name = name
        self.claim = claim
        self.build = build
        self.gap_only = gap_only


SWEEPS: Dict[str, Sweep] = {
    sweep.name: sweep
    for sweep in (
        Sweep("addition-ratio", "g(x) + g(y) against g(x + y - xy)", _addition_rows),
        Sweep("addition-gap", "d(x, y) = g(x) + g(y) - g(x + y - xy)", _addition_rows, gap_only=True),
        Sweep("phi-g-constant", "T(s) against b/a", _phi_g_constant_rows),
        Sweep("beta-profile", "g(x) against b phi(g(...)); their quotient is the t-ratio", _beta_profile_rows),
        Sweep("omega-p-profile", "omega(p) against omega at the next grid point", _omega_rows),
    )
}


def sweep_names() -> List[str]:
    return list(SWEEPS)


def build_frame(sweep: Sweep, rows: List[Row]) -> pd.DataFrame:
    """Rows as a frame: point columns, then lhs, rhs and gap = rhs - lhs"""
    frame = pd.DataFrame(rows)
    frame["gap"] = frame["rhs"] - frame["lhs"]
    if sweep.gap_only:
        # d(x, y) = lhs - rhs in the addition vocabulary
        frame["gap"] = -frame["gap"]
        frame = frame.drop(columns=["lhs", "rhs"])
    return frame


def write_csv(frame: pd.DataFrame, out: Path) -> None:
    try:
        frame.to_csv(out, index=False, float_format="%.17g")
    except OSError as e:
        raise OutputError(f"Cannot write {out}: {e}")


def run_sweep(name: str, settings: RunSettings, out: Optional[Path] = None) -> Tuple[SweepDocument, pd.DataFrame]:
    """
    Evaluate a named sweep

    Args:
        name: Sweep name from the built-in vocabulary
        settings: Merged run settings; --c/--d and --a/--b pick the pair and exponents
        out: CSV destination, or None to skip writing

    Returns:
        The JSON document and the row frame
    """
    sweep = SWEEPS.get(name)
    if sweep is None:
        raise UsageError(f"Unknown sweep {name!r}; known sweeps: {', '.join(SWEEPS)}")
    start = time.perf_counter()
    ctx = CheckContext(f"sweep:{name}", settings)
    pair = settings.pair_override() or DEFAULT_PAIR
    e = settings.exponents_override() or DEFAULT_EXPONENTS
    ctx.params.update({**pair.key(), **e.key()})
    logger.info("Running sweep %s for c=%g, d=%g", name, pair.c, pair.d)

    rows = sweep.build(ctx, pair, e)
    for row in rows:
        point = {k: v for k, v in row.items() if k not in ("lhs", "rhs")}
        ctx.ledger.add(point, row["lhs"], row["rhs"])
    frame = build_frame(sweep, rows)
    ctx.details.update(
        min_gap=float(np.min(frame["gap"])),
        max_gap=float(np.max(frame["gap"])),
    )
    if "lhs" in frame and not sweep.gap_only:
        ratio = frame["lhs"] / frame["rhs"]
        ctx.details.update(min_ratio=float(ratio.min()), max_ratio=float(ratio.max()))

    if out is not None:
        write_csv(frame, out)
        logger.info("Wrote %d rows to %s", len(frame), out)

    elapsed = int(round((time.perf_counter() - start) * 1000)) if settings.timing else 0
    report = ctx.finish(sweep.claim, exploratory=True, runtime_ms=elapsed)
    document = SweepDocument(
        name=name,
        out=str(out) if out is not None else None,
        n_rows=len(frame),
        columns=[str(c) for c in frame.columns],
        report=report,
    )
    return document, frame
