# app/core/experiment/calibration.py
import logging
from typing import List, Optional

import numpy as np

from app.core.exceptions import InsufficientDataError, ValidationError
from app.core.problem import make_problem
from app.core.theory import width_factor
from app.schemas import GridResult

from .grid import success_frequencies, trial_seeds

logger = logging.getLogger(__name__)

BOUNDARY_LEVEL = 0.5


def _median_kappa(result: GridResult, i: int, j: int) -> float:
    """Медиана κ(A) по задачам клетки, восстановленным из seed испытаний"""
    spec = result.spec
    dims = spec.cell_dimensions(i, j)
    kappas = []
    for trial in range(spec.trials_per_cell):
        _, problem_seed, _ = trial_seeds(spec.master_seed, i, j, trial)
        prob = make_problem(
            dims["m"],
            dims["n"],
            spec.fixed.noise_level,
            problem_seed,
            operator_kind=spec.fixed.operator_kind,
            signal_scale=spec.fixed.signal_scale,
        )
        kappas.append(prob.kappa_A)
    return float(np.median(kappas))


def calibrate_c1(result: GridResult, level: float = BOUNDARY_LEVEL) -> float:
    """
    Константа C1 по границе фазового перехода

    Для каждого значения второй оси берётся наименьшее k с частотой успеха
    ≥ level; C1 = медиана k_boundary / (κ²·n·(√n(√log d + 1) + √m)²),
    где κ равно медиане по задачам граничной клетки.

    Raises:
        ValidationError: у сетки нет оси k
        InsufficientDataError: ни один столбец не достигает level
    """
    spec = result.spec
    if spec.axis1.name == "k":
        freq = success_frequencies(result)
        k_index_first = True
    elif spec.axis2.name == "k":
        freq = success_frequencies(result).T
        k_index_first = False
    else:
        raise ValidationError("C1 calibration needs a grid with a k axis", field="axis1")

    k_values = spec.axis1.values if k_index_first else spec.axis2.values
    order = np.argsort(k_values, kind="stable")

    estimates: List[float] = []
    for col in range(freq.shape[1]):
        boundary: Optional[int] = None
        for row in order:
            if not np.isnan(freq[row, col]) and freq[row, col] >= level:
                boundary = int(row)
                break
        if boundary is None:
            continue
        i, j = (boundary, col) if k_index_first else (col, boundary)
        dims = spec.cell_dimensions(i, j)
        factor = width_factor(dims["n"], dims["m"], dims["d"], _median_kappa(result, i, j))
        estimates.append(dims["k"] / factor)

    if not estimates:
        raise InsufficientDataError(0, 1)
    c1 = float(np.median(estimates))
    logger.info(f"✅ Calibrated C1 = {c1:.4g} from {len(estimates)} boundary cells")
    return c1
