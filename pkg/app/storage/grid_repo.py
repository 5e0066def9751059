# app/storage/grid_repo.py
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

from app.schemas import GridResult

from .base import JsonRepository
from .csv_io import write_csv

logger = logging.getLogger(__name__)

GRID_JSON = "grid_result.json"
GRID_CSV = "grid_result.csv"
GRID_PARTIAL = "grid_result.partial.json"
GRID_CSV_COLUMNS = ("axis1", "axis2", "success_freq", "trials", "mean_steps")


class GridRepository(JsonRepository[GridResult]):
    """Результаты сеток: итоговый JSON, CSV по клеткам и частичный файл"""

    def __init__(self, directory: Union[str, Path]):
        super().__init__(GridResult, directory)

    @property
    def partial_path(self) -> Path:
        return self.path(GRID_PARTIAL)

    def save_result(
        self, result: GridResult, provenance: Optional[Dict[str, Any]] = None
    ) -> Path:
        """Итоговый JSON и CSV; частичный файл удаляется"""
        target = self.save(result, GRID_JSON, provenance)
        self.save_csv(result, provenance)
        if self.delete(GRID_PARTIAL):
            logger.debug("Partial grid result removed")
        return target

    def save_csv(self, result: GridResult, provenance: Optional[Dict[str, Any]] = None) -> Path:
        rows = []
        for row in result.cells:
            for cell in row:
                if cell is None:
                    continue
                rows.append(
                    [
                        cell.axis1_value,
                        cell.axis2_value,
                        repr(cell.success_freq),
                        cell.trials,
                        "" if cell.mean_steps_to_converge is None else repr(cell.mean_steps_to_converge),
                    ]
                )
        # имена параметров осей уходят в строку провенанса
        provenance = {
            **(provenance or {}),
            "axis1": result.spec.axis1.name,
            "axis2": result.spec.axis2.name,
        }
        target = self.path(GRID_CSV)
        write_csv(target, GRID_CSV_COLUMNS, rows, provenance)
        return target

    def save_partial(self, result: GridResult, provenance: Optional[Dict[str, Any]] = None) -> Path:
        return self.save(result, GRID_PARTIAL, provenance)

    def load_partial(self) -> Optional[GridResult]:
        """Частичный результат или None, если файла нет"""
        if not self.exists(GRID_PARTIAL):
            return None
        partial = self.load(GRID_PARTIAL)
        logger.info(
            f"🔄 Resuming grid: {len(partial.missing_cells())} cells missing in {self.partial_path}"
        )
        return partial
