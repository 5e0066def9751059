"""
Схемы снимков сети и задачи для возобновления экспериментов
"""
from typing import List, Optional

from pydantic import Field

from .base import SEED_LIMIT, BaseDTO


class NetworkSnapshot(BaseDTO):
    """Снимок сети: размерности и seed, при необходимости: матрицы"""

    k: int = Field(..., ge=1, description="Ширина скрытого слоя")
    d: int = Field(..., ge=1, description="Размерность входа u")
    n: int = Field(..., ge=1, description="Размерность сигнала")
    seed: Optional[int] = Field(None, ge=0, lt=SEED_LIMIT, description="Seed инициализации")
    activation: str = Field(..., description="Имя активации")
    v_distribution: str = Field("rademacher", description="Распределение V")
    u: Optional[List[float]] = Field(None, description="Вход u")
    W: Optional[List[List[float]]] = Field(None, description="Текущие веса W")
    W0: Optional[List[List[float]]] = Field(None, description="Веса W(0)")
    V: Optional[List[List[float]]] = Field(None, description="Второй слой V")


class ProblemSnapshot(BaseDTO):
    """Снимок обратной задачи: параметры и seed, при необходимости: матрицы"""

    m: int = Field(..., ge=1, description="Число наблюдений")
    n: int = Field(..., ge=1, description="Размерность сигнала")
    noise_level: float = Field(0.0, ge=0, description="‖ε‖ / ‖ȳ‖")
    seed: Optional[int] = Field(None, ge=0, lt=SEED_LIMIT, description="Seed задачи")
    operator_kind: str = Field("gaussian", description="Тип оператора")
    signal_scale: float = Field(1.0, gt=0, description="Масштаб x̄")
    A: Optional[List[List[float]]] = Field(None, description="Оператор A")
    x_bar: Optional[List[float]] = Field(None, description="Истинный сигнал x̄")
    eps: Optional[List[float]] = Field(None, description="Шум ε")
