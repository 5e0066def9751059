# app/core/activation/quadrature.py
import logging
import math
from enum import Enum
from functools import lru_cache
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy.special import roots_hermitenorm

from app.application.config import theory_settings
from app.core.activation.base import ActivationSpec
from app.core.exceptions import EvaluationError, NumericalError, ValidationError

logger = logging.getLogger(__name__)

_SQRT_2PI = math.sqrt(2.0 * math.pi)


class MomentOrder(str, Enum):
    VALUE = "value"
    DERIVATIVE = "derivative"


@lru_cache(maxsize=16)
def _hermite_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Узлы и веса для веса exp(−x²/2), нормированные на вероятностную меру"""
    x, w = roots_hermitenorm(nodes)
    x.setflags(write=False)
    w = w / _SQRT_2PI
    w.setflags(write=False)
    return x, w


def _second_moment(f: Callable[[np.ndarray], np.ndarray], nodes: int) -> float:
    x, w = _hermite_rule(nodes)
    values = np.asarray(f(x), dtype=float)
    bad = ~np.isfinite(values)
    if bad.any():
        raise EvaluationError(
            f"Non-finite evaluations at {int(bad.sum())} of {nodes} quadrature nodes",
            bad_nodes=x[bad][:10].tolist(),
        )
    return float(np.dot(w, values**2))


def gaussian_moment(
    f: Union[ActivationSpec, Callable[[np.ndarray], np.ndarray]],
    order: Union[MomentOrder, str] = MomentOrder.VALUE,
    nodes: Optional[int] = None,
) -> float:
    """
    √E[f(g)²] для g ~ N(0, 1) квадратурой Гаусса–Эрмита

    Число узлов удваивается, пока две последовательные оценки не совпадут
    с точностью QUADRATURE_TOL.

    Args:
        f: скалярная функция или активация
        order: для активации выбирает φ (value) или φ′ (derivative)
        nodes: начальное число узлов (по умолчанию из настроек)

    Returns:
        Неотрицательное число
    """
    order = MomentOrder(order)
    if isinstance(f, ActivationSpec):
        fn = f.value if order is MomentOrder.VALUE else f.first_derivative
    else:
        if order is not MomentOrder.VALUE:
            raise ValidationError(
                "A bare callable has no derivative; pass its derivative as f",
                field="order",
            )
        fn = f

    n = nodes or theory_settings.QUADRATURE_NODES
    tol = theory_settings.QUADRATURE_TOL
    current = _second_moment(fn, n)
    while n * 2 <= theory_settings.QUADRATURE_MAX_NODES:
        refined = _second_moment(fn, n * 2)
        if abs(math.sqrt(refined) - math.sqrt(current)) < tol:
            return math.sqrt(refined)
        n *= 2
        current = refined

    raise NumericalError(
        "Gauss-Hermite quadrature did not converge",
        diagnostics={"nodes": n, "tolerance": tol},
    )


def monte_carlo_moment(
    f: Callable[[np.ndarray], np.ndarray],
    samples: int = 1_000_000,
    seed: int = 0,
    chunk: int = 1_000_000,
) -> Tuple[float, float]:
    """
    Монте-Карло оценка √E[f(g)²] и её стандартная ошибка (дельта-метод)
    """
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    remaining = samples
    while remaining > 0:
        size = min(chunk, remaining)
        values = np.asarray(f(rng.standard_normal(size)), dtype=float) ** 2
        total += float(values.sum())
        total_sq += float((values**2).sum())
        remaining -= size

    mean = total / samples
    var = max(total_sq / samples - mean**2, 0.0)
    se_mean = math.sqrt(var / samples)
    estimate = math.sqrt(mean)
    # d√x/dx = 1/(2√x)
    se = se_mean / (2.0 * estimate) if estimate > 0 else se_mean
    return estimate, se
