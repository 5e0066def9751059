# app/storage/__init__.py
from .base import JsonRepository, atomic_write_text
from .csv_io import read_csv, write_csv
from .grid_repo import GRID_CSV, GRID_JSON, GRID_PARTIAL, GridRepository
from .matrix_io import read_matrix, write_matrix
from .trajectory_repo import TRAJECTORY_FILE, TrajectoryRepository

from app.schemas import (
    EarlyStoppingSummary,
    NetworkSnapshot,
    ProblemSnapshot,
    TheoryReport,
    VerifySummary,
)

# Тип артефакта -> модель JSON-репозитория
REPOSITORY_MAP = {
    "report": TheoryReport,
    "network": NetworkSnapshot,
    "problem": ProblemSnapshot,
    "verify": VerifySummary,
    "early_stopping": EarlyStoppingSummary,
}


def get_repository(kind: str, directory):
    """
    Фабрика репозиториев по типу артефакта

    Args:
        kind: 'report', 'network', 'problem', 'verify', 'early_stopping',
            'grid' или 'trajectory'
        directory: каталог артефактов

    Raises:
        ValueError: если тип неизвестен
    """
    if kind == "grid":
        return GridRepository(directory)
    if kind == "trajectory":
        return TrajectoryRepository(directory)
    if kind not in REPOSITORY_MAP:
        raise ValueError(
            f"Unknown artifact type: {kind}. "
            f"Available types: {list(REPOSITORY_MAP.keys()) + ['grid', 'trajectory']}"
        )
    return JsonRepository(REPOSITORY_MAP[kind], directory)


__all__ = [
    "JsonRepository",
    "GridRepository",
    "TrajectoryRepository",
    "atomic_write_text",
    "read_csv",
    "write_csv",
    "read_matrix",
    "write_matrix",
    "get_repository",
    "GRID_JSON",
    "GRID_CSV",
    "GRID_PARTIAL",
    "TRAJECTORY_FILE",
]
