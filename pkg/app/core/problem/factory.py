# app/core/problem/factory.py
import logging
from typing import Optional

import numpy as np

from app.core.exceptions import ValidationError
from app.core.problem.operator import (
    InverseProblem,
    range_basis,
    spectral_summary,
)
from app.schemas.snapshot import ProblemSnapshot

logger = logging.getLogger(__name__)

OPERATOR_KINDS = ("gaussian", "identity", "custom")


def make_problem(
    m: int,
    n: int,
    noise_level: float,
    seed: int,
    operator_kind: str = "gaussian",
    A: Optional[np.ndarray] = None,
    signal_scale: float = 1.0,
) -> InverseProblem:
    """
    Построить обратную задачу

    Порядок выборок фиксирован: A (для gaussian), x̄, затем направление шума.
    Шум ε = noise_level·‖ȳ‖·P g/‖P g‖, где P есть проектор на ran(A);
    при noise_level = 0 шум нулевой и y = ȳ.

    Args:
        m, n: размеры оператора
        noise_level: ‖ε‖ / ‖ȳ‖
        seed: seed генератора
        operator_kind: gaussian | identity | custom
        A: матрица для custom
        signal_scale: стандартное отклонение элементов x̄
    """
    for field_name, value in (("m", m), ("n", n)):
        if int(value) < 1:
            raise ValidationError(f"Dimension {field_name} must be >= 1, got {value}", field=field_name)
    if noise_level < 0:
        raise ValidationError("noise_level must be nonnegative", field="noise_level")

    rng = np.random.default_rng(seed)

    if operator_kind == "gaussian":
        A = rng.standard_normal((m, n))
    elif operator_kind == "identity":
        A = np.eye(m, n)
    elif operator_kind == "custom":
        if A is None:
            raise ValidationError("custom operator requires a matrix", field="A")
        A = np.array(A, dtype=float)
        if A.shape != (m, n):
            raise ValidationError(
                f"custom operator has shape {A.shape}, expected {(m, n)}", field="A"
            )
    else:
        raise ValidationError(
            f"Unknown operator kind '{operator_kind}'. Available: {list(OPERATOR_KINDS)}",
            field="operator_kind",
        )

    summary = spectral_summary(A)

    x_bar = signal_scale * rng.standard_normal(n)
    y_bar = A @ x_bar

    eps = np.zeros(m)
    if noise_level > 0:
        g = rng.standard_normal(m)
        U = range_basis(A)
        projected = U @ (U.T @ g)
        norm_p = float(np.linalg.norm(projected))
        norm_ybar = float(np.linalg.norm(y_bar))
        if norm_p > 0 and norm_ybar > 0:
            eps = noise_level * norm_ybar * projected / norm_p
        else:
            logger.warning("⚠️  Noise direction or clean observation is zero; using eps = 0")

    y = y_bar + eps

    return InverseProblem(
        A=A,
        x_bar=x_bar,
        eps=eps,
        y=y,
        y_bar=y_bar,
        sigma_A=summary.sigma_A,
        kappa_A=summary.kappa_A,
        sigma_max=summary.sigma_max,
        rank=summary.rank,
        operator_kind=operator_kind,
        noise_level=noise_level,
        seed=seed,
        signal_scale=signal_scale,
    )


def to_snapshot(prob: InverseProblem, include_matrices: bool = False) -> ProblemSnapshot:
    return ProblemSnapshot(
        m=prob.m,
        n=prob.n,
        noise_level=prob.noise_level,
        seed=prob.seed,
        operator_kind=prob.operator_kind,
        signal_scale=prob.signal_scale,
        A=prob.A.tolist() if include_matrices or prob.operator_kind == "custom" else None,
        x_bar=prob.x_bar.tolist() if include_matrices else None,
        eps=prob.eps.tolist() if include_matrices else None,
    )


def from_snapshot(snapshot: ProblemSnapshot) -> InverseProblem:
    """Восстановить задачу по матрицам или по seed и параметрам"""
    if snapshot.A is not None and snapshot.x_bar is not None and snapshot.eps is not None:
        A = np.asarray(snapshot.A, dtype=float)
        x_bar = np.asarray(snapshot.x_bar, dtype=float)
        eps = np.asarray(snapshot.eps, dtype=float)
        summary = spectral_summary(A)
        y_bar = A @ x_bar
        return InverseProblem(
            A=A,
            x_bar=x_bar,
            eps=eps,
            y=y_bar + eps,
            y_bar=y_bar,
            sigma_A=summary.sigma_A,
            kappa_A=summary.kappa_A,
            sigma_max=summary.sigma_max,
            rank=summary.rank,
            operator_kind=snapshot.operator_kind,
            noise_level=snapshot.noise_level,
            seed=snapshot.seed,
            signal_scale=snapshot.signal_scale,
        )

    if snapshot.seed is None:
        raise ValidationError("Snapshot has neither matrices nor seed", field="seed")
    return make_problem(
        snapshot.m,
        snapshot.n,
        snapshot.noise_level,
        snapshot.seed,
        snapshot.operator_kind,
        A=np.asarray(snapshot.A) if snapshot.A is not None else None,
        signal_scale=snapshot.signal_scale,
    )
