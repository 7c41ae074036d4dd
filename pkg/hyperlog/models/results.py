"""
Output models: evaluation results, checker verdicts and reports
"""

import math
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from hyperlog.core.config import APP_VERSION
from hyperlog.models.params import GridSpec


class EvalMethod(str, Enum):
    SERIES = "series"
    EULER_TRANSFORMED = "euler_transformed"
    NEAR1_ASYMPTOTIC = "near1_asymptotic"


class EvalResult(BaseModel):
    """Function value with an absolute error estimate and the method used"""

    value: float = Field(..., description="Computed value")
    abs_err_estimate: float = Field(..., ge=0, description="Absolute error estimate")
    method: EvalMethod = Field(..., description="Evaluation route")
    n_terms: int = Field(0, ge=0, description="Series terms summed (0 when no series ran)")

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {"value": 1.3862943611198906, "abs_err_estimate": 3e-16, "method": "series", "n_terms": 52}
        },
    )

    @field_validator("abs_err_estimate")
    @classmethod
    def finite_error(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("abs_err_estimate must be finite")
        return v

    def scaled(self, factor: float) -> "EvalResult":
        """Result for factor * value"""
        return self.model_copy(
            update={"value": factor * self.value, "abs_err_estimate": abs(factor) * self.abs_err_estimate}
        )


class CoeffSeq(BaseModel):
    """Maclaurin coefficients c_0 .. c_N"""

    coeffs: List[float] = Field(..., min_length=1)

    model_config = ConfigDict(frozen=True)

    @field_validator("coeffs")
    @classmethod
    def all_finite(cls, v: List[float]) -> List[float]:
        if not all(math.isfinite(c) for c in v):
            raise ValueError("coefficients must be finite")
        return v

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> float:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)


class MonotoneKind(str, Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    NON_MONOTONE = "non_monotone"


class MonotonicityVerdict(BaseModel):
    """
    Outcome of a finite-difference monotonicity check

    worst_violation is the smallest signed consecutive difference in the
    requested direction (negative values go against it).
    """

    kind: MonotoneKind
    requested: MonotoneKind
    worst_violation: float
    error_allowance: float = Field(0.0, ge=0, description="Error estimates summed at the worst difference")
    witness: Optional[float] = None
    values_at_ends: List[float] = Field(default_factory=list)

    @model_validator(mode="after")
    def witness_when_non_monotone(self) -> "MonotonicityVerdict":
        if self.kind is MonotoneKind.NON_MONOTONE and self.witness is None:
            raise ValueError("a non-monotone verdict needs a witness")
        return self

    @property
    def holds(self) -> bool:
        return self.kind is self.requested


class ConcavityKind(str, Enum):
    CONCAVE = "concave"
    CONVEX = "convex"
    NEITHER = "neither"


class ConcavityVerdict(BaseModel):
    """Outcome of a second-difference concavity check"""

    kind: ConcavityKind
    max_second_difference: float
    min_second_difference: float
    concave_excess: float = Field(0.0, description="max of second difference minus error allowance")
    convex_excess: float = Field(0.0, description="max of minus second difference minus error allowance")
    witness: Optional[float] = None
    inflections: List[float] = Field(default_factory=list)

    @model_validator(mode="after")
    def witness_when_neither(self) -> "ConcavityVerdict":
        if self.kind is ConcavityKind.NEITHER and self.witness is None:
            raise ValueError("a 'neither' verdict needs a witness")
        return self


class Violation(BaseModel):
    """Grid point where lhs <= rhs failed; gap = rhs - lhs"""

    point: Dict[str, float]
    lhs: float
    rhs: float
    gap: float

    def sort_key(self):
        return (self.gap, tuple(sorted(self.point.items())))


class ReportStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    EXPLORATORY = "exploratory"


class VerificationReport(BaseModel):
    """Result of one check: worst margin over its grids and located violations"""

    theorem_id: str = Field(..., description="Check identifier")
    claim: str = Field("", description="One-line statement of what was checked")
    params: Dict[str, Any] = Field(default_factory=dict)
    grids: Dict[str, GridSpec] = Field(default_factory=dict)
    tolerance: float = Field(..., gt=0)
    status: ReportStatus
    worst_margin: float
    n_points: int = Field(0, ge=0)
    violations: List[Violation] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)
    runtime_ms: int = Field(0, ge=0)

    @model_validator(mode="after")
    def status_consistent(self) -> "VerificationReport":
        if self.status is ReportStatus.FAIL and not self.violations:
            raise ValueError("a failing report needs at least one violation")
        if self.status is ReportStatus.PASS and self.worst_margin < -self.tolerance:
            raise ValueError("a passing report cannot have worst_margin below -tolerance")
        return self

    @property
    def passed(self) -> bool:
        return self.status is not ReportStatus.FAIL


class RootReport(BaseModel):
    """Solved named root"""

    command: str = "root"
    version: str = APP_VERSION
    name: str
    value: float
    params: Dict[str, float] = Field(default_factory=dict)
    tolerance: float
    residual: float
    bracket: List[float] = Field(default_factory=list)
    iterations: int = Field(0, ge=0)
    diagnostics: Dict[str, Any] = Field(default_factory=dict)
    runtime_ms: int = Field(0, ge=0)


class CheckDocument(BaseModel):
    """JSON document printed by `hyperlog check`"""

    command: str = "check"
    version: str = APP_VERSION
    status: ReportStatus
    reports: List[VerificationReport]

    @classmethod
    def from_reports(cls, reports: List[VerificationReport]) -> "CheckDocument":
        if any(r.status is ReportStatus.FAIL for r in reports):
            status = ReportStatus.FAIL
        elif reports and all(r.status is ReportStatus.EXPLORATORY for r in reports):
            status = ReportStatus.EXPLORATORY
        else:
            status = ReportStatus.PASS
        return cls(status=status, reports=reports)


class SweepDocument(BaseModel):
    """JSON document printed by `hyperlog sweep`"""

    command: str = "sweep"
    version: str = APP_VERSION
    name: str
    out: Optional[str] = None
    n_rows: int = Field(0, ge=0)
    columns: List[str] = Field(default_factory=list)
    report: VerificationReport


class ErrorDocument(BaseModel):
    """JSON document printed when a command fails"""

    error: str
    message: str
    details: Dict[str, Any] = Field(default_factory=dict)
