from app.core.exceptions.base import DipException, ExitCode
from app.core.exceptions.numerics import (
    BudgetExceededError,
    DegenerateOperatorError,
    EvaluationError,
    InsufficientDataError,
    NumericalError,
    ResumeMismatchError,
    UnsupportedActivationError,
    ValidationError,
)

__all__ = [
    "DipException",
    "ExitCode",
    "ValidationError",
    "UnsupportedActivationError",
    "EvaluationError",
    "NumericalError",
    "DegenerateOperatorError",
    "InsufficientDataError",
    "BudgetExceededError",
    "ResumeMismatchError",
]
