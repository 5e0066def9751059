# app/core/experiment/grid.py
import logging
import math
import threading
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from app.application.config import settings
from app.core.activation import get_activation
from app.core.exceptions import BudgetExceededError, ResumeMismatchError, ValidationError
from app.core.flow import run_flow
from app.core.model import init_network
from app.core.problem import make_problem
from app.schemas import CellResult, FlowOutcome, GridResult, GridSpec, TrialRecord
from app.utils.seeding import derive_seed
from app.workers.pool import WorkerPool

logger = logging.getLogger(__name__)

# Дочерние потоки базового seed испытания
PROBLEM_STREAM = 0
NETWORK_STREAM = 1

ProgressCallback = Callable[[int, int, CellResult], None]
CheckpointCallback = Callable[[GridResult], None]


def trial_seeds(master_seed: int, i: int, j: int, trial: int) -> Tuple[int, int, int]:
    """(базовый seed, seed задачи, seed сети) испытания trial клетки (i, j)"""
    base = derive_seed(master_seed, i, j, trial)
    return base, derive_seed(base, PROBLEM_STREAM), derive_seed(base, NETWORK_STREAM)


def cell_cost(spec: GridSpec, i: int, j: int) -> float:
    """Работа клетки: trials·max_steps·(k·d + n·k + m·n)"""
    dims = spec.cell_dimensions(i, j)
    k, n, m, d = dims["k"], dims["n"], dims["m"], dims["d"]
    return float(spec.trials_per_cell) * spec.flow.max_steps * (k * d + n * k + m * n)


def estimate_cost(spec: GridSpec, cells: Optional[List[Tuple[int, int]]] = None) -> float:
    """
    Оценка стоимости сетки в условных единицах работы

    Args:
        spec: конфигурация сетки
        cells: учитываемые клетки; по умолчанию все
    """
    if cells is None:
        rows, cols = spec.shape
        cells = [(i, j) for i in range(rows) for j in range(cols)]
    return sum(cell_cost(spec, i, j) for i, j in cells)


def aggregate_cell(spec: GridSpec, i: int, j: int, records: List[TrialRecord]) -> CellResult:
    """Свёртка испытаний клетки; records упорядочены по номеру испытания"""
    converged = [r for r in records if r.outcome == FlowOutcome.CONVERGED]
    return CellResult(
        axis1_value=spec.axis1.values[i],
        axis2_value=spec.axis2.values[j],
        success_count=len(converged),
        trials=len(records),
        mean_steps_to_converge=(
            float(np.mean([r.steps for r in converged])) if converged else None
        ),
        mean_final_loss=float(np.mean([r.final_loss for r in records])),
        seeds=[trial_seeds(spec.master_seed, i, j, r.trial)[0] for r in records],
    )


class GridRunner:
    """
    Прогон сетки фазового перехода

    Каждое испытание (задача, сеть, поток) получает seed из master_seed,
    индексов клетки и номера испытания, поэтому результат не зависит от
    числа потоков и порядка завершения.
    """

    def __init__(
        self,
        spec: GridSpec,
        pool: Optional[WorkerPool] = None,
        budget: Optional[float] = None,
        progress: Optional[ProgressCallback] = None,
        checkpoint: Optional[CheckpointCallback] = None,
        cancel: Optional[threading.Event] = None,
    ):
        if spec.fixed.operator_kind == "custom":
            raise ValidationError(
                "Phase grids draw their own operators; 'custom' is not supported",
                field="fixed.operator_kind",
            )
        self.spec = spec
        self.pool = pool
        self.budget = settings.WORK_BUDGET if budget is None else budget
        self.progress = progress
        self.checkpoint = checkpoint
        self.cancel = cancel
        self.activation = get_activation(spec.fixed.activation)

    def run_trial(self, task: Tuple[int, int, int]) -> TrialRecord:
        """Одно испытание клетки (i, j)"""
        if self.cancel is not None and self.cancel.is_set():
            raise KeyboardInterrupt("grid run cancelled")
        i, j, trial = task
        spec, fixed = self.spec, self.spec.fixed
        dims = spec.cell_dimensions(i, j)
        _, problem_seed, network_seed = trial_seeds(spec.master_seed, i, j, trial)

        prob = make_problem(
            dims["m"],
            dims["n"],
            fixed.noise_level,
            problem_seed,
            operator_kind=fixed.operator_kind,
            signal_scale=fixed.signal_scale,
        )
        net = init_network(
            dims["k"], dims["d"], dims["n"], self.activation, network_seed, fixed.v_distribution
        )
        trajectory = run_flow(net, prob, spec.flow)
        return TrialRecord(
            trial=trial,
            problem_seed=problem_seed,
            network_seed=network_seed,
            outcome=trajectory.outcome,
            steps=trajectory.steps_taken,
            final_loss=trajectory.final.loss,
        )

    def _empty_cells(self) -> List[List[Optional[CellResult]]]:
        rows, cols = self.spec.shape
        return [[None] * cols for _ in range(rows)]

    def run(
        self, resume: Optional[GridResult] = None, resume_source: str = "partial result"
    ) -> GridResult:
        """
        Посчитать недостающие клетки

        Args:
            resume: частичный результат той же сетки
            resume_source: имя источника для сообщения об ошибке

        Raises:
            ResumeMismatchError: частичный результат от другой сетки
            BudgetExceededError: оценка работы превышает бюджет
        """
        spec = self.spec
        if resume is not None:
            if resume.spec != spec:
                raise ResumeMismatchError(resume_source)
            cells = [list(row) for row in resume.cells]
        else:
            cells = self._empty_cells()

        missing = [
            (i, j) for i, row in enumerate(cells) for j, cell in enumerate(row) if cell is None
        ]
        estimate = estimate_cost(spec, missing)
        if estimate > self.budget:
            raise BudgetExceededError(estimate, self.budget)

        total = len(missing)
        logger.info(
            f"🚀 Grid {spec.axis1.name}x{spec.axis2.name}: {total} cells to run "
            f"({spec.trials_per_cell} trials each, estimate {estimate:.3e} units)"
        )

        tasks = [(i, j, t) for i, j in missing for t in range(spec.trials_per_cell)]
        buckets: Dict[Tuple[int, int], Dict[int, TrialRecord]] = {cell: {} for cell in missing}
        completed = 0

        def on_result(index: int, record: TrialRecord):
            nonlocal completed
            i, j, _ = tasks[index]
            bucket = buckets[(i, j)]
            bucket[record.trial] = record
            if len(bucket) < spec.trials_per_cell:
                return
            cell = aggregate_cell(spec, i, j, [bucket[t] for t in sorted(bucket)])
            cells[i][j] = cell
            completed += 1
            logger.info(
                f"Cell ({spec.axis1.name}={cell.axis1_value}, "
                f"{spec.axis2.name}={cell.axis2_value}): success {cell.success_freq:.2f} "
                f"[{completed}/{total}]"
            )
            if self.progress:
                self.progress(completed, total, cell)
            if self.checkpoint:
                self.checkpoint(GridResult(spec=spec, cells=cells, complete=False))

        if self.pool is None:
            with WorkerPool(threads=1) as pool:
                pool.map_ordered(self.run_trial, tasks, on_result)
        else:
            self.pool.map_ordered(self.run_trial, tasks, on_result)

        result = GridResult(spec=spec, cells=cells, complete=True)
        logger.info(f"✅ Grid finished: {len(result.missing_cells())} cells missing")
        return result


def run_grid(
    spec: GridSpec,
    pool: Optional[WorkerPool] = None,
    budget: Optional[float] = None,
    progress: Optional[ProgressCallback] = None,
    checkpoint: Optional[CheckpointCallback] = None,
    resume: Optional[GridResult] = None,
    cancel: Optional[threading.Event] = None,
) -> GridResult:
    """Прогнать сетку; см. GridRunner"""
    runner = GridRunner(spec, pool, budget, progress, checkpoint, cancel)
    return runner.run(resume)


def success_frequencies(result: GridResult) -> np.ndarray:
    """Матрица частот успеха; NaN для непосчитанных клеток"""
    rows, cols = result.spec.shape
    freq = np.full((rows, cols), math.nan)
    for i, row in enumerate(result.cells):
        for j, cell in enumerate(row):
            if cell is not None:
                freq[i, j] = cell.success_freq
    return freq


def monotonicity_violations(result: GridResult) -> List[Tuple[int, int, int]]:
    """
    Нарушения неубывания частоты успеха вдоль оси k

    Соседние значения k сравниваются с допуском 2/√trials.

    Returns:
        Список (индекс столбца, индекс меньшего k, индекс большего k)
    """
    spec = result.spec
    if "k" not in (spec.axis1.name, spec.axis2.name):
        raise ValidationError("Grid has no k axis", field="axis1")
    freq = success_frequencies(result)
    if spec.axis2.name == "k":
        freq = freq.T
        k_values = spec.axis2.values
    else:
        k_values = spec.axis1.values
    slack = 2.0 / math.sqrt(spec.trials_per_cell)
    order = np.argsort(k_values, kind="stable")

    violations = []
    for col in range(freq.shape[1]):
        for lo, hi in zip(order, order[1:]):
            a, b = freq[lo, col], freq[hi, col]
            if np.isnan(a) or np.isnan(b):
                continue
            if b < a - slack:
                violations.append((col, int(lo), int(hi)))
    return violations
