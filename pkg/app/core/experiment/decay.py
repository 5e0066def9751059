# app/core/experiment/decay.py
import logging
from typing import Optional

import numpy as np
from scipy.stats import linregress

from app.core.exceptions import InsufficientDataError
from app.schemas import DecayFit, Trajectory

logger = logging.getLogger(__name__)

MIN_SAMPLES = 10
FLOOR_FACTOR = 10.0


def numerical_floor(initial_residual: float) -> float:
    """Уровень, ниже которого невязка считается машинным нулём"""
    return FLOOR_FACTOR * float(np.finfo(float).eps) * max(1.0, initial_residual)


def fit_decay_rate(trajectory: Trajectory, floor: Optional[float] = None) -> DecayFit:
    """
    Наклон log‖y(t) − y‖ по t методом наименьших квадратов

    Используются точки до первого падения невязки на численный пол.

    Raises:
        InsufficientDataError: меньше MIN_SAMPLES пригодных точек
    """
    floor = numerical_floor(trajectory.initial.residual_y) if floor is None else floor

    times, logs = [], []
    for sample in trajectory.samples:
        if not np.isfinite(sample.residual_y) or sample.residual_y <= floor:
            break
        times.append(sample.time)
        logs.append(np.log(sample.residual_y))

    if len(times) < MIN_SAMPLES:
        raise InsufficientDataError(len(times), MIN_SAMPLES)

    fit = linregress(np.asarray(times), np.asarray(logs))
    result = DecayFit(
        rate_hat=float(-fit.slope),
        r_squared=float(fit.rvalue**2),
        samples_used=len(times),
    )
    logger.debug(f"Decay fit: rate={result.rate_hat:.4g}, r2={result.r_squared:.6f}")
    return result
