"""
Exception hierarchy shared by the library and the CLI
"""

from typing import Any, Dict, Optional


class HyperlogError(Exception):
    """Base class for all hyperlog errors"""

    exit_code = 1
    kind = "error"


class DomainError(HyperlogError, ValueError):
    """Argument outside the domain of an operation"""

    exit_code = 2
    kind = "domain"


class ConvergenceError(HyperlogError, ArithmeticError):
    """Series truncation cap exceeded before the stopping rule fired"""

    kind = "convergence"

    def __init__(self, message: str, partial_value: float, n_terms: int, x: float):
        super().__init__(message)
        self.partial_value = partial_value
        self.n_terms = n_terms
        self.x = x


class BracketError(HyperlogError):
    """Root solver could not bracket or converge"""

    exit_code = 3
    kind = "bracket"

    def __init__(
        self,
        message: str,
        lo: float,
        hi: float,
        f_lo: float,
        f_hi: float,
        diagnostics: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message)
        self.lo = lo
        self.hi = hi
        self.f_lo = f_lo
        self.f_hi = f_hi
        self.diagnostics = diagnostics or {}


class EvaluationError(HyperlogError):
    """A checked function produced a non-finite value or raised at a grid point"""

    kind = "evaluation"

    def __init__(self, message: str, point: float):
        super().__init__(message)
        self.point = point


class ContractError(HyperlogError):
    """An internal contract was broken (e.g. piecewise branches disagree)"""

    kind = "contract"


class UsageError(HyperlogError):
    """Unknown command name or invalid flags"""

    exit_code = 2
    kind = "usage"


class OutputError(HyperlogError, OSError):
    """Output path cannot be written"""

    exit_code = 4
    kind = "output"
