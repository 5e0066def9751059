# app/utils/logging.py
import logging
import sys
from typing import Optional

from app.application.config import settings

LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def setup_logging(level: Optional[str] = None) -> int:
    """
    Настроить корневой логгер (stderr, чтобы stdout оставался для JSON)

    Args:
        level: уровень; по умолчанию settings.LOG_LEVEL

    Returns:
        Числовой уровень логирования
    """
    name = (level or settings.LOG_LEVEL).upper()
    numeric = logging.getLevelName(name)
    if not isinstance(numeric, int):
        raise ValueError(f"Unknown log level '{name}'")
    logging.basicConfig(
        level=numeric,
        format=LOG_FORMAT,
        datefmt=DATE_FORMAT,
        stream=sys.stderr,
        force=True,
    )
    return numeric
