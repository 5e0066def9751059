# app/storage/matrix_io.py
import logging
import struct
from pathlib import Path
from typing import Union

import numpy as np

from app.core.exceptions import ValidationError

logger = logging.getLogger(__name__)

# Двоичный формат: rows, cols (little-endian uint32), затем float64 по строкам
HEADER = struct.Struct("<II")
BINARY_SUFFIXES = (".bin", ".mat64")


def _is_binary(path: Path) -> bool:
    return path.suffix.lower() in BINARY_SUFFIXES


def read_matrix(path: Union[str, Path]) -> np.ndarray:
    """
    Прочитать матрицу оператора

    Текстовый формат: первая строка "rows cols", далее rows строк
    по cols чисел через пробел.

    Raises:
        ValidationError: файл не найден или размеры не сходятся
    """
    path = Path(path)
    if not path.is_file():
        raise ValidationError(f"Matrix file '{path}' not found", field="operator_path")

    if _is_binary(path):
        raw = path.read_bytes()
        if len(raw) < HEADER.size:
            raise ValidationError(f"Matrix file '{path}' is truncated", field="operator_path")
        rows, cols = HEADER.unpack_from(raw)
        data = np.frombuffer(raw, dtype="<f8", offset=HEADER.size)
        if data.size != rows * cols:
            raise ValidationError(
                f"Matrix file '{path}' declares {rows}x{cols} but holds {data.size} values",
                field="operator_path",
            )
        return data.reshape(rows, cols).astype(float)

    lines = [line for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]
    if not lines:
        raise ValidationError(f"Matrix file '{path}' is empty", field="operator_path")
    try:
        rows, cols = (int(tok) for tok in lines[0].split())
        values = np.array([[float(tok) for tok in line.split()] for line in lines[1:]])
    except ValueError as exc:
        raise ValidationError(
            f"Matrix file '{path}' is malformed: {exc}", field="operator_path"
        ) from exc
    if values.shape != (rows, cols):
        raise ValidationError(
            f"Matrix file '{path}' declares {rows}x{cols} but holds {values.shape}",
            field="operator_path",
        )
    return values


def write_matrix(path: Union[str, Path], A: np.ndarray) -> Path:
    """Записать матрицу; формат выбирается по расширению файла"""
    path = Path(path)
    A = np.atleast_2d(np.asarray(A, dtype=float))
    path.parent.mkdir(parents=True, exist_ok=True)
    rows, cols = A.shape
    if _is_binary(path):
        path.write_bytes(HEADER.pack(rows, cols) + A.astype("<f8").tobytes(order="C"))
    else:
        body = "\n".join(" ".join(repr(float(x)) for x in row) for row in A)
        path.write_text(f"{rows} {cols}\n{body}\n", encoding="utf-8")
    logger.debug(f"Matrix {rows}x{cols} written to {path}")
    return path
