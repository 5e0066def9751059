"""
Экспорт всех схем (DTO) приложения
"""
from .base import SEED_LIMIT, BaseDTO, FrozenDTO, ProvenanceMixin
from .config import NetworkParams, ProbeConfig, ProblemParams, RunConfig
from .experiment import (
    CellResult,
    DecayFit,
    EarlyStoppingSummary,
    EarlyStoppingTrial,
    ExperimentParams,
    GridAxis,
    GridFixed,
    GridResult,
    GridSpec,
    TrialRecord,
)
from .flow import (
    TRAJECTORY_COLUMNS,
    FlowConfig,
    FlowOutcome,
    Trajectory,
    TrajectorySample,
)
from .snapshot import NetworkSnapshot, ProblemSnapshot
from .theory import ProbeSummary, TheoryReport, VerifySummary

__all__ = [
    # Базовые
    "SEED_LIMIT",
    "BaseDTO",
    "FrozenDTO",
    "ProvenanceMixin",
    # Конфигурация
    "ProblemParams",
    "NetworkParams",
    "RunConfig",
    "ProbeConfig",
    # Поток
    "TRAJECTORY_COLUMNS",
    "FlowConfig",
    "FlowOutcome",
    "Trajectory",
    "TrajectorySample",
    # Теория
    "TheoryReport",
    "ProbeSummary",
    "VerifySummary",
    # Эксперименты
    "GridAxis",
    "GridFixed",
    "GridSpec",
    "TrialRecord",
    "CellResult",
    "GridResult",
    "DecayFit",
    "ExperimentParams",
    "EarlyStoppingTrial",
    "EarlyStoppingSummary",
    # Снимки
    "NetworkSnapshot",
    "ProblemSnapshot",
]
