# app/core/exceptions/numerics.py
from typing import Any, Dict, Optional

from app.core.exceptions.base import DipException, ExitCode


class ValidationError(DipException):
    """Ошибка валидации входных параметров"""

    def __init__(self, detail: str, field: Optional[str] = None):
        super().__init__(
            detail=detail,
            error_code="VALIDATION_ERROR",
            exit_code=ExitCode.CONFIG_ERROR,
            extra={"field": field} if field else {},
        )
        self.field = field


class UnsupportedActivationError(DipException):
    """Активация не поддерживается"""

    def __init__(self, name: str, supported: Optional[list] = None):
        super().__init__(
            detail=f"Activation '{name}' is not supported",
            error_code="UNSUPPORTED_ACTIVATION",
            extra={"name": name, "supported": supported or []},
        )


class EvaluationError(DipException):
    """Нечисловое значение функции в узлах квадратуры"""

    def __init__(self, detail: str, bad_nodes: Optional[list] = None):
        super().__init__(
            detail=detail,
            error_code="EVALUATION_ERROR",
            extra={"bad_nodes": bad_nodes or []},
        )


class NumericalError(DipException):
    """Сбой численного метода (собственные значения, сходимость квадратуры)"""

    def __init__(self, detail: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(
            detail=detail,
            error_code="NUMERICAL_ERROR",
            extra=diagnostics or {},
        )


class DegenerateOperatorError(DipException):
    """Нулевой прямой оператор"""

    def __init__(self, shape: tuple):
        super().__init__(
            detail=f"Forward operator of shape {shape} has no nonzero singular value",
            error_code="DEGENERATE_OPERATOR",
            extra={"shape": list(shape)},
        )


class InsufficientDataError(DipException):
    """Недостаточно точек траектории для подгонки"""

    def __init__(self, available: int, required: int):
        super().__init__(
            detail=f"Only {available} usable samples, at least {required} required",
            error_code="INSUFFICIENT_DATA",
            extra={"available": available, "required": required},
        )


class BudgetExceededError(DipException):
    """Оценка стоимости сетки превышает бюджет"""

    def __init__(self, estimate: float, budget: float):
        super().__init__(
            detail=(
                f"Grid cost estimate {estimate:.3e} work units exceeds "
                f"budget {budget:.3e}"
            ),
            error_code="BUDGET_EXCEEDED",
            exit_code=ExitCode.BUDGET_EXCEEDED,
            extra={"estimate": estimate, "budget": budget},
        )


class ResumeMismatchError(DipException):
    """Частичный результат получен для другой конфигурации сетки"""

    def __init__(self, path: str):
        super().__init__(
            detail=f"Partial result '{path}' was produced by a different grid spec",
            error_code="RESUME_MISMATCH",
            extra={"path": path},
        )
