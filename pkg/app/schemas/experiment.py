"""
Схемы экспериментов: сетки фазовых переходов, подгонка скорости, ранняя остановка
"""
from typing import Any, Dict, List, Literal, Optional

from pydantic import Field, field_validator, model_validator

from .base import SEED_LIMIT, BaseDTO, FrozenDTO, ProvenanceMixin
from .flow import FlowConfig, FlowOutcome

AxisName = Literal["k", "n", "m", "d"]
OperatorKind = Literal["gaussian", "identity", "custom"]
DIMENSIONS = ("k", "n", "m", "d")


class GridAxis(BaseDTO):
    """Именованная ось сетки"""

    name: AxisName = Field(..., description="Параметр, меняющийся вдоль оси")
    values: List[int] = Field(..., min_length=1, description="Значения параметра")

    @field_validator("values")
    @classmethod
    def check_positive(cls, v: List[int]) -> List[int]:
        if any(x < 1 for x in v):
            raise ValueError("axis values must be positive")
        return v


class GridFixed(BaseDTO):
    """Фиксированные параметры сетки"""

    k: Optional[int] = Field(None, ge=1)
    n: Optional[int] = Field(None, ge=1)
    m: Optional[int] = Field(None, ge=1)
    d: Optional[int] = Field(None, ge=1)
    activation: str = Field("sigmoid", description="Имя активации")
    operator_kind: OperatorKind = Field("gaussian", description="Тип оператора")
    noise_level: float = Field(0.0, ge=0, description="‖ε‖ / ‖ȳ‖")
    v_distribution: Literal["rademacher", "uniform"] = Field("rademacher")
    signal_scale: float = Field(1.0, gt=0)


class GridSpec(BaseDTO):
    """Сетка k×n или k×m с несколькими испытаниями в клетке"""

    axis1: GridAxis
    axis2: GridAxis
    fixed: GridFixed = Field(default_factory=GridFixed)
    trials_per_cell: int = Field(10, ge=1, description="Испытаний в клетке")
    flow: FlowConfig = Field(default_factory=FlowConfig)
    master_seed: int = Field(0, ge=0, lt=SEED_LIMIT)

    @model_validator(mode="after")
    def check_axes(self) -> "GridSpec":
        if self.axis1.name == self.axis2.name:
            raise ValueError("axis1 and axis2 must vary different parameters")
        for axis in (self.axis1, self.axis2):
            if getattr(self.fixed, axis.name) is not None:
                raise ValueError(f"'{axis.name}' is both an axis and a fixed parameter")
        for dim in DIMENSIONS:
            if dim in (self.axis1.name, self.axis2.name):
                continue
            if getattr(self.fixed, dim) is None:
                raise ValueError(f"fixed parameter '{dim}' is missing")
        return self

    @property
    def shape(self) -> tuple:
        return len(self.axis1.values), len(self.axis2.values)

    def cell_dimensions(self, i: int, j: int) -> Dict[str, int]:
        """Размерности (k, n, m, d) для клетки (i, j)"""
        dims = {dim: getattr(self.fixed, dim) for dim in DIMENSIONS}
        dims[self.axis1.name] = self.axis1.values[i]
        dims[self.axis2.name] = self.axis2.values[j]
        return dims


class TrialRecord(FrozenDTO):
    """Итог одного испытания (задача, сеть, поток)"""

    trial: int = Field(..., ge=0)
    problem_seed: int = Field(..., ge=0, lt=SEED_LIMIT)
    network_seed: int = Field(..., ge=0, lt=SEED_LIMIT)
    outcome: FlowOutcome
    steps: int = Field(..., ge=0)
    final_loss: float


class CellResult(FrozenDTO):
    """Агрегат клетки сетки"""

    axis1_value: int
    axis2_value: int
    success_count: int = Field(..., ge=0)
    trials: int = Field(..., ge=1)
    mean_steps_to_converge: Optional[float] = Field(
        None, description="Среднее число шагов среди успешных испытаний"
    )
    mean_final_loss: float
    seeds: List[int] = Field(..., description="Базовые seed испытаний клетки")

    @model_validator(mode="after")
    def check_counts(self) -> "CellResult":
        if self.success_count > self.trials:
            raise ValueError("success_count exceeds trials")
        return self

    @property
    def success_freq(self) -> float:
        return self.success_count / self.trials


class GridResult(FrozenDTO, ProvenanceMixin):
    """Результат сетки; None в клетке: ещё не посчитано (частичный результат)"""

    spec: GridSpec
    cells: List[List[Optional[CellResult]]]
    complete: bool = False

    def missing_cells(self) -> List[tuple]:
        return [
            (i, j)
            for i, row in enumerate(self.cells)
            for j, cell in enumerate(row)
            if cell is None
        ]


class DecayFit(FrozenDTO):
    """Подгонка экспоненциального спада ‖y(t) − y‖"""

    rate_hat: float = Field(..., description="−наклон log‖y(t) − y‖ по t")
    r_squared: float
    samples_used: int = Field(..., ge=2)


class ExperimentParams(BaseDTO):
    """Параметры серии испытаний вне сетки"""

    m: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    d: int = Field(..., ge=1)
    activation: str = Field("sigmoid")
    operator_kind: OperatorKind = Field("gaussian")
    v_distribution: Literal["rademacher", "uniform"] = Field("rademacher")
    signal_scale: float = Field(1.0, gt=0)
    flow: FlowConfig = Field(default_factory=FlowConfig)


class EarlyStoppingTrial(FrozenDTO):
    """Испытание ранней остановки"""

    trial: int
    seed: int
    condition_eq5: bool
    t_star: Optional[float] = None
    noise_norm: float
    residual_ybar_at_t_star: Optional[float] = None
    passed: Optional[bool] = None


class EarlyStoppingSummary(FrozenDTO, ProvenanceMixin):
    """Итог проверки ранней остановки ‖y(t*) − ȳ‖ ≤ 2‖ε‖"""

    trials: int
    premise_met: int
    premise_unmet: int
    successes: int
    fraction: Optional[float] = Field(None, description="Доля успехов среди испытаний с выполненным условием")
    records: List[EarlyStoppingTrial]
    parameters: Dict[str, Any] = Field(default_factory=dict)
