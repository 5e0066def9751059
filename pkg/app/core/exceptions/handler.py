# app/core/exceptions/handler.py
import json
import logging
import sys
import traceback
from typing import Callable, Optional, TextIO

from pydantic import ValidationError as PydanticValidationError

from app.core.exceptions.base import DipException, ExitCode

logger = logging.getLogger(__name__)


def format_validation_error(exc: PydanticValidationError) -> str:
    """Одна строка на ошибку: путь поля и сообщение pydantic"""
    lines = []
    for error in exc.errors():
        location = ".".join(str(part) for part in error.get("loc", ())) or "<root>"
        lines.append(f"field '{location}': {error.get('msg')}")
    return "; ".join(lines)


def run_with_error_handling(
    handler: Callable[[], int], stderr: Optional[TextIO] = None, debug: bool = False
) -> int:
    """
    Выполнить команду и перевести исключения в коды завершения

    DipException несёт свой exit_code; ошибки валидации pydantic и
    синтаксиса JSON дают 1 с указанием поля или строки; прерывание: 130.
    """
    stderr = stderr or sys.stderr
    try:
        return int(handler())

    except DipException as exc:
        logger.warning(f"Command failed: {exc.detail}")
        print(f"error [{exc.error_code}]: {exc.detail}", file=stderr)
        if exc.extra:
            print(json.dumps(exc.extra, default=str), file=stderr)
        return exc.exit_code

    except PydanticValidationError as exc:
        message = format_validation_error(exc)
        logger.warning(f"Invalid configuration: {message}")
        print(f"error [VALIDATION_ERROR]: invalid {exc.title}: {message}", file=stderr)
        return ExitCode.CONFIG_ERROR

    except json.JSONDecodeError as exc:
        logger.warning(f"Malformed JSON: {exc}")
        print(
            f"error [JSON_SYNTAX]: line {exc.lineno}, column {exc.colno}: {exc.msg}",
            file=stderr,
        )
        return ExitCode.CONFIG_ERROR

    except FileNotFoundError as exc:
        print(f"error [FILE_NOT_FOUND]: {exc}", file=stderr)
        return ExitCode.CONFIG_ERROR

    except KeyboardInterrupt:
        logger.warning("⚠️ Interrupted, partial results are kept")
        print("interrupted", file=stderr)
        return ExitCode.INTERRUPTED

    except Exception as exc:
        logger.error(f"Unexpected error: {exc}")
        logger.error(traceback.format_exc())
        detail = f"{type(exc).__name__}: {exc}" if debug else "internal error"
        print(f"error [INTERNAL_ERROR]: {detail}", file=stderr)
        return ExitCode.INTERNAL_ERROR
