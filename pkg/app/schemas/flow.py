"""
Схемы градиентного потока: конфигурация и траектория
"""
import math
from enum import Enum
from typing import List, Optional

from pydantic import Field, model_validator

from app.application.config import flow_settings

from .base import BaseDTO, FrozenDTO

TRAJECTORY_COLUMNS = (
    "step",
    "time",
    "loss",
    "residual_y",
    "residual_ybar",
    "param_drift",
    "sigma_min_J",
)


class FlowOutcome(str, Enum):
    CONVERGED = "converged"
    STEP_CAP = "step_cap"
    DIVERGED = "diverged"


class FlowConfig(BaseDTO):
    """Параметры явной схемы Эйлера"""

    step_size: float = Field(
        default_factory=lambda: flow_settings.STEP_SIZE,
        gt=0,
        description="Шаг η; непрерывное время t = step·η",
    )
    max_steps: int = Field(
        default_factory=lambda: flow_settings.MAX_STEPS,
        ge=1,
        description="Максимальное число шагов",
    )
    loss_threshold: float = Field(
        default_factory=lambda: flow_settings.LOSS_THRESHOLD,
        gt=0,
        description="Критерий успеха по функции потерь",
    )
    record_every: int = Field(
        default_factory=lambda: flow_settings.RECORD_EVERY,
        ge=1,
        description="Шаг прореживания траектории",
    )
    track_sigma_min: bool = Field(
        False,
        description="Записывать σ_min(J(θ(t))) (дорого)",
    )


class TrajectorySample(FrozenDTO):
    """Точка траектории"""

    step: int = Field(..., ge=0)
    time: float = Field(..., ge=0)
    loss: float
    residual_y: float = Field(..., description="‖y(t) − y‖")
    residual_ybar: float = Field(..., description="‖y(t) − ȳ‖")
    param_drift: float = Field(..., description="‖W(t) − W(0)‖_F")
    sigma_min_J: Optional[float] = Field(None, description="σ_min(J(θ(t)))")


class Trajectory(FrozenDTO):
    """Траектория потока с исходом"""

    samples: List[TrajectorySample] = Field(..., min_length=1)
    outcome: FlowOutcome
    step_size: float = Field(..., gt=0)

    @model_validator(mode="after")
    def check_ordering(self) -> "Trajectory":
        steps = [s.step for s in self.samples]
        if any(b <= a for a, b in zip(steps, steps[1:])):
            raise ValueError("Trajectory steps must be strictly increasing")
        for s in self.samples:
            if not math.isclose(s.time, s.step * self.step_size, rel_tol=1e-12, abs_tol=1e-12):
                raise ValueError(f"Sample at step {s.step} has time {s.time} != step*eta")
        return self

    @property
    def initial(self) -> TrajectorySample:
        return self.samples[0]

    @property
    def final(self) -> TrajectorySample:
        return self.samples[-1]

    @property
    def steps_taken(self) -> int:
        return self.final.step

    def column(self, name: str) -> List[Optional[float]]:
        """Столбец траектории по имени из TRAJECTORY_COLUMNS"""
        if name not in TRAJECTORY_COLUMNS:
            raise KeyError(name)
        return [getattr(s, name) for s in self.samples]
