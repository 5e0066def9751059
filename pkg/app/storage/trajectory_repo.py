# app/storage/trajectory_repo.py
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from app.schemas import TRAJECTORY_COLUMNS, FlowOutcome, Trajectory, TrajectorySample

from .csv_io import read_csv, write_csv

logger = logging.getLogger(__name__)

TRAJECTORY_FILE = "trajectory.csv"


def _cell(value: Any) -> Any:
    return "" if value is None else repr(value) if isinstance(value, float) else value


class TrajectoryRepository:
    """Траектории потока в CSV (столбцы TRAJECTORY_COLUMNS)"""

    def __init__(self, directory: Union[str, Path]):
        self.directory = Path(directory)

    def save(
        self,
        trajectory: Trajectory,
        name: str = TRAJECTORY_FILE,
        provenance: Optional[Dict[str, Any]] = None,
    ) -> Path:
        meta = dict(provenance or {})
        meta["outcome"] = trajectory.outcome.value
        meta["step_size"] = trajectory.step_size
        rows = (
            [_cell(getattr(sample, column)) for column in TRAJECTORY_COLUMNS]
            for sample in trajectory.samples
        )
        target = self.directory / name
        write_csv(target, TRAJECTORY_COLUMNS, rows, meta)
        logger.debug(f"Trajectory with {len(trajectory.samples)} samples saved to {target}")
        return target

    def load(self, name: str = TRAJECTORY_FILE) -> Tuple[Trajectory, Dict[str, Any]]:
        """Траектория и провенанс из CSV"""
        provenance, rows = read_csv(self.directory / name)
        samples = [
            TrajectorySample(
                step=int(row["step"]),
                time=float(row["time"]),
                loss=float(row["loss"]),
                residual_y=float(row["residual_y"]),
                residual_ybar=float(row["residual_ybar"]),
                param_drift=float(row["param_drift"]),
                sigma_min_J=float(row["sigma_min_J"]) if row["sigma_min_J"] else None,
            )
            for row in rows
        ]
        trajectory = Trajectory(
            samples=samples,
            outcome=FlowOutcome(provenance.pop("outcome")),
            step_size=float(provenance.pop("step_size")),
        )
        return trajectory, provenance
