# app/storage/csv_io.py
import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .base import atomic_write_text

COMMENT = "#"


def provenance_lines(provenance: Optional[Dict[str, Any]]) -> List[str]:
    """Строки '# key=<json>' для каждого ключа провенанса"""
    if not provenance:
        return []
    return [
        f"{COMMENT} {key}={json.dumps(value, sort_keys=True, default=str)}"
        for key, value in provenance.items()
    ]


def write_csv(
    path: Path,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    provenance: Optional[Dict[str, Any]] = None,
):
    """CSV с ведущими строками-комментариями провенанса"""
    buffer = io.StringIO()
    for line in provenance_lines(provenance):
        buffer.write(line + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    atomic_write_text(path, buffer.getvalue())


def read_csv(path: Path) -> Tuple[Dict[str, Any], List[Dict[str, str]]]:
    """
    Прочитать CSV, записанный write_csv

    Returns:
        (провенанс, строки как словари)
    """
    provenance: Dict[str, Any] = {}
    body: List[str] = []
    with open(path, encoding="utf-8", newline="") as fh:
        for line in fh:
            if line.startswith(COMMENT):
                key, _, value = line[len(COMMENT):].strip().partition("=")
                provenance[key] = json.loads(value)
            else:
                body.append(line)
    return provenance, list(csv.DictReader(body))
