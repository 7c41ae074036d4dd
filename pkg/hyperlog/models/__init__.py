"""
Pydantic models for parameters, evaluation results and reports
"""

from hyperlog.models.params import (
    GridSpec,
    HypParams,
    PhiExponents,
    RunSettings,
    Spacing,
    ZeroBalancedPair,
)
from hyperlog.models.results import (
    CheckDocument,
    CoeffSeq,
    ConcavityKind,
    ConcavityVerdict,
    EvalMethod,
    ErrorDocument,
    EvalResult,
    MonotoneKind,
    MonotonicityVerdict,
    ReportStatus,
    RootReport,
    SweepDocument,
    VerificationReport,
    Violation,
)

__all__ = [
    "GridSpec",
    "HypParams",
    "PhiExponents",
    "RunSettings",
    "Spacing",
    "ZeroBalancedPair",
    "CheckDocument",
    "CoeffSeq",
    "ConcavityKind",
    "ConcavityVerdict",
    "EvalMethod",
    "ErrorDocument",
    "EvalResult",
    "MonotoneKind",
    "MonotonicityVerdict",
    "ReportStatus",
    "RootReport",
    "SweepDocument",
    "VerificationReport",
    "Violation",
]
