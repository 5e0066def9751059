"""
Схемы конфигурационных файлов CLI
"""
from typing import Literal, Optional

from pydantic import Field, field_validator, model_validator

from .base import SEED_LIMIT, BaseDTO
from .experiment import OperatorKind
from .flow import FlowConfig

_ACTIVATIONS = ("sigmoid", "tanh", "softplus", "linear")


class ProblemParams(BaseDTO):
    """Параметры обратной задачи"""

    m: int = Field(..., ge=1, description="Число наблюдений")
    n: int = Field(..., ge=1, description="Размерность сигнала")
    operator_kind: OperatorKind = Field("gaussian", description="Тип оператора")
    operator_path: Optional[str] = Field(None, description="Файл матрицы для custom")
    noise_level: float = Field(0.0, ge=0, description="‖ε‖ / ‖ȳ‖")
    signal_scale: float = Field(1.0, gt=0, description="Масштаб x̄")

    @model_validator(mode="after")
    def check_custom(self) -> "ProblemParams":
        if self.operator_kind == "custom" and not self.operator_path:
            raise ValueError("operator_path is required for operator_kind 'custom'")
        return self


class NetworkParams(BaseDTO):
    """Параметры сети"""

    k: int = Field(..., ge=1, description="Ширина скрытого слоя")
    d: int = Field(..., ge=1, description="Размерность входа")
    activation: str = Field("sigmoid", description="Имя активации")
    v_distribution: Literal["rademacher", "uniform"] = Field("rademacher")

    @field_validator("activation")
    @classmethod
    def check_activation(cls, v: str) -> str:
        name = v.strip().lower()
        if name not in _ACTIVATIONS:
            raise ValueError(f"unsupported activation '{v}', expected one of {list(_ACTIVATIONS)}")
        return name


class RunConfig(BaseDTO):
    """Конфигурация одиночного запуска (solve, theory)"""

    problem: ProblemParams
    network: NetworkParams
    flow: FlowConfig = Field(default_factory=FlowConfig)
    seed: int = Field(0, ge=0, lt=SEED_LIMIT)
    output_dir: Optional[str] = Field(None, description="Каталог артефактов")
    c1: Optional[float] = Field(None, gt=0, description="Константа C1 оценки ширины")
    c2: Optional[float] = Field(None, gt=0, description="Константа C2 оценки времени")


class ProbeConfig(BaseDTO):
    """Конфигурация проверки лемм (verify)"""

    n: int = Field(..., ge=1)
    d: int = Field(..., ge=1)
    m: int = Field(..., ge=1)
    k: Optional[int] = Field(None, ge=1, description="По умолчанию: ширина из матричного Чернова")
    activation: str = Field("sigmoid")
    v_distribution: Literal["rademacher", "uniform"] = Field("rademacher")
    operator_kind: OperatorKind = Field("gaussian")
    noise_level: float = Field(0.0, ge=0)
    target_failure: Optional[float] = Field(None, gt=0, lt=1, description="По умолчанию 1/n")
    trials: int = Field(200, ge=10)
    lipschitz_pairs: int = Field(100, ge=1)
    seed: int = Field(0, ge=0, lt=SEED_LIMIT)
    output_dir: Optional[str] = None

    @field_validator("activation")
    @classmethod
    def check_activation(cls, v: str) -> str:
        name = v.strip().lower()
        if name not in _ACTIVATIONS:
            raise ValueError(f"unsupported activation '{v}', expected one of {list(_ACTIVATIONS)}")
        return name

    @field_validator("operator_kind")
    @classmethod
    def check_operator(cls, v: str) -> str:
        if v == "custom":
            raise ValueError("probes generate their own operators; 'custom' is not allowed")
        return v
