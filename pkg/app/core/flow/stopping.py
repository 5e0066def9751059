# app/core/flow/stopping.py
import logging
import math
from typing import List

from app.core.exceptions import ValidationError
from app.schemas import TheoryReport, Trajectory, TrajectorySample

logger = logging.getLogger(__name__)


def early_stopping_time(
    report: TheoryReport, init_residual: float, noise_norm: float
) -> float:
    """
    Время ранней остановки t* = 4m·log(‖y(0) − y‖/‖ε‖) / (σ_A² σ_min(J(θ₀))²)

    Returns:
        0, если init_residual ≤ noise_norm; math.inf при ‖ε‖ = 0: сигнал
        бесконечного горизонта (вызывающий идёт до порога потерь)
    """
    if noise_norm < 0:
        raise ValidationError("noise_norm must be nonnegative", field="noise_norm")
    if noise_norm == 0:
        return math.inf
    if init_residual <= noise_norm:
        return 0.0
    denominator = report.sigma_A**2 * report.sigma_min_J0**2
    if denominator == 0:
        return math.inf
    return 4.0 * report.m * math.log(init_residual / noise_norm) / denominator


def check_envelope(
    trajectory: Trajectory, report: TheoryReport, slack: float = 0.05
) -> List[TrajectorySample]:
    """
    Точки, нарушающие ‖y(t) − y‖ ≤ (1 + slack)·‖y(0) − y‖·exp(−rate·t)

    Returns:
        Список нарушений (пустой, если огибающая выполнена)
    """
    r0 = trajectory.initial.residual_y
    return [
        s
        for s in trajectory.samples
        if not s.residual_y <= (1.0 + slack) * r0 * math.exp(-report.rate * s.time)
    ]


def check_lemma1(trajectory: Trajectory, report: TheoryReport) -> List[TrajectorySample]:
    """
    Точки, нарушающие σ_min(J(θ(t))) ≥ σ_min(J(θ₀))/2 или ‖W(t) − W(0)‖_F ≤ R′

    Точки без записанного σ_min проверяются только по дрейфу.
    """
    floor = report.sigma_min_J0 / 2.0
    violations = []
    for s in trajectory.samples:
        if s.param_drift > report.R_prime:
            violations.append(s)
        elif s.sigma_min_J is not None and s.sigma_min_J < floor:
            violations.append(s)
    return violations
