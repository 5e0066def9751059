# app/core/exceptions/base.py
from enum import IntEnum
from typing import Any, Dict, Optional


class ExitCode(IntEnum):
    """Стабильные коды завершения CLI"""

    OK = 0
    CONVERGED = 0
    CONFIG_ERROR = 1
    STEP_CAP = 2
    DIVERGED = 3
    BUDGET_EXCEEDED = 4
    VERIFICATION_FAILED = 5
    INTERNAL_ERROR = 70
    INTERRUPTED = 130


class DipException(Exception):
    """Базовое исключение библиотеки"""

    def __init__(
        self,
        detail: str,
        error_code: Optional[str] = None,
        exit_code: int = ExitCode.CONFIG_ERROR,
        extra: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(detail)
        self.detail = detail
        self.error_code = error_code
        self.exit_code = int(exit_code)
        self.extra = extra or {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "code": self.error_code,
            "message": self.detail,
            "details": self.extra,
        }
