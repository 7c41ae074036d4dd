"""
Input models: parameter triples, exponent pairs and sweep grids
"""

from enum import Enum
from typing import Any, Dict, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from hyperlog.core.config import DEFAULT_GRID_N, DEFAULT_GRIDS, DEFAULT_TOL, ZERO_BALANCED_TOL
from hyperlog.core.errors import DomainError

# a0 = cd/(c+d) may land a few ulps above 1 on the admissible boundary
ADMISSIBLE_SLACK = 1e-12


class DomainModel(BaseModel):
    """Frozen model whose validation failures surface as DomainError"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    @classmethod
    def create(cls, **fields: Any):
        try:
            return cls(**fields)
        except ValidationError as e:
            raise DomainError(f"Invalid {cls.__name__}: {e.errors()[0]['msg']}") from e


class HypParams(DomainModel):
    """Positive parameter triple (a, b, c) of the Gauss function F(a,b;c;x)"""

    a: float = Field(..., gt=0, description="First numerator parameter")
    b: float = Field(..., gt=0, description="Second numerator parameter")
    c: float = Field(..., gt=0, description="Denominator parameter")

    model_config = ConfigDict(
        frozen=True,
        allow_inf_nan=False,
        json_schema_extra={"example": {"a": 0.5, "b": 0.5, "c": 1.0}},
    )

    @property
    def zero_balanced(self) -> bool:
        """c = a + b up to ZERO_BALANCED_TOL"""
        return abs(self.a + self.b - self.c) <= ZERO_BALANCED_TOL

    @property
    def excess(self) -> float:
        """c - a - b"""
        return self.c - self.a - self.b

    def shifted(self) -> "HypParams":
        """Parameters of the derivative series, (a+1, b+1, c+1)"""
        return HypParams(a=self.a + 1.0, b=self.b + 1.0, c=self.c + 1.0)


class ZeroBalancedPair(DomainModel):
    """Pair (c, d) defining g(x) = x F(c, d; c+d; x)"""

    c: float = Field(..., gt=0, description="First parameter")
    d: float = Field(..., gt=0, description="Second parameter")

    @property
    def a0(self) -> float:
        """Leading coefficient cd/(c+d) of F'/F"""
        return self.c * self.d / (self.c + self.d)

    @property
    def h(self) -> float:
        """a0 - a1 = a0^2/(c+d+1)"""
        return self.a0**2 / (self.c + self.d + 1.0)

    @property
    def admissible(self) -> bool:
        """1/c + 1/d >= 1, equivalently a0 <= 1"""
        return self.a0 <= 1.0 + ADMISSIBLE_SLACK

    @property
    def product_at_most_one(self) -> bool:
        """cd <= 1"""
        return self.c * self.d <= 1.0 + ADMISSIBLE_SLACK

    @property
    def params(self) -> HypParams:
        return HypParams(a=self.c, b=self.d, c=self.c + self.d)

    def key(self) -> Dict[str, float]:
        return {"c": self.c, "d": self.d}


class PhiExponents(DomainModel):
    """Exponents of phi(t) = max(t^a, t^b) with 0 < a <= 1 <= b"""

    a: float = Field(..., gt=0, le=1, description="Small exponent")
    b: float = Field(..., ge=1, description="Large exponent")

    def key(self) -> Dict[str, float]:
        return {"a": self.a, "b": self.b}


class Spacing(str, Enum):
    LINEAR = "linear"
    LOG = "log"


class GridSpec(DomainModel):
    """Sweep description: n_points values from lo to hi"""

    lo: float
    hi: float
    n_points: int = Field(..., ge=3)
    spacing: Spacing = Spacing.LINEAR

    @model_validator(mode="after")
    def check_range(self) -> "GridSpec":
        if not self.lo < self.hi:
            raise ValueError(f"lo must be below hi, got [{self.lo}, {self.hi}]")
        if self.spacing is Spacing.LOG and self.lo <= 0:
            raise ValueError("log spacing requires lo > 0")
        return self

    def points(self) -> np.ndarray:
        if self.spacing is Spacing.LOG:
            return np.geomspace(self.lo, self.hi, self.n_points)
        return np.linspace(self.lo, self.hi, self.n_points)

    def resized(self, n_points: int) -> "GridSpec":
        return self.model_copy(update={"n_points": n_points})


class RunSettings(BaseModel):
    """Merged run configuration: defaults < config file < command-line flags"""

    tol: float = Field(DEFAULT_TOL, gt=0, description="Absolute tolerance on margins")
    grid_n: Optional[int] = Field(None, ge=3, description="Override for every grid size")
    c: Optional[float] = Field(None, gt=0)
    d: Optional[float] = Field(None, gt=0)
    a: Optional[float] = Field(None, gt=0)
    b: Optional[float] = Field(None, gt=0)
    p: Optional[float] = Field(None, gt=0)
    timing: bool = False
    grids: Dict[str, GridSpec] = Field(default_factory=dict)

    model_config = ConfigDict(allow_inf_nan=False)

    @field_validator("grids", mode="before")
    @classmethod
    def parse_grids(cls, v):
        """Accept plain tables from a TOML file"""
        if isinstance(v, dict):
            return {
                name: spec if isinstance(spec, GridSpec) else GridSpec(**spec)
                for name, spec in v.items()
            }
        return v

    @classmethod
    def from_sources(
        cls, config: Optional[Dict[str, Any]] = None, flags: Optional[Dict[str, Any]] = None
    ) -> "RunSettings":
        merged: Dict[str, Any] = {}
        merged.update(config or {})
        merged.update({k: v for k, v in (flags or {}).items() if v is not None})
        try:
            return cls(**merged)
        except ValidationError as e:
            raise DomainError(f"Invalid settings: {e.errors()[0]['msg']}") from e

    def grid(self, name: str, n_points: Optional[int] = None) -> GridSpec:
        """Named grid: config override if present, else the built-in default"""
        spec = self.grids.get(name)
        if spec is None:
            spec = GridSpec(**DEFAULT_GRIDS[name])
            if n_points is not None:
                spec = spec.resized(n_points)
        if self.grid_n is not None:
            spec = spec.resized(self.grid_n)
        return spec

    def pair_override(self) -> Optional[ZeroBalancedPair]:
        if self.c is None and self.d is None:
            return None
        c = self.c if self.c is not None else self.d
        d = self.d if self.d is not None else self.c
        return ZeroBalancedPair.create(c=c, d=d)

    def exponents_override(self) -> Optional[PhiExponents]:
        if self.a is None and self.b is None:
            return None
        a = self.a if self.a is not None else 1.0
        b = self.b if self.b is not None else 1.0
        return PhiExponents.create(a=a, b=b)

    def overrides(self) -> Dict[str, float]:
        return {k: getattr(self, k) for k in ("c", "d", "a", "b", "p") if getattr(self, k) is not None}

    @property
    def default_grid_n(self) -> int:
        return self.grid_n or DEFAULT_GRID_N
