"""
Схемы теоретического отчёта и проверок лемм
"""
import math
from typing import Any, Dict, List, Optional

from pydantic import Field, model_validator

from .base import FrozenDTO, ProvenanceMixin

RADIUS_TIE_RTOL = 1e-9


class TheoryReport(FrozenDTO, ProvenanceMixin):
    """Все величины теоремы о сходимости и лемм для начальной точки θ₀"""

    # Размерности
    m: int = Field(..., ge=1, description="Число наблюдений")
    n: int = Field(..., ge=1, description="Размерность сигнала")
    k: int = Field(..., ge=1, description="Ширина скрытого слоя")
    d: int = Field(..., ge=1, description="Размерность входа")

    # Активация и второй слой
    activation: str = Field(..., description="Имя активации")
    B: float = Field(..., ge=0, description="Граница производных активации")
    D: float = Field(..., ge=0, description="Граница элементов V")
    C_phi: float = Field(..., ge=0, description="√E[φ(g)²]")
    C_phi_prime: float = Field(..., ge=0, description="√E[φ′(g)²]")

    # Оператор
    sigma_A: float = Field(..., gt=0, description="Наименьшее ненулевое сингулярное число A")
    kappa_A: float = Field(..., ge=1, description="Число обусловленности A")

    # Величины теоремы
    sigma_min_J0: float = Field(..., ge=0, description="σ_min(J(θ₀))")
    lip_J_bound: float = Field(..., gt=0, description="BD√(n/k)")
    init_residual: float = Field(..., ge=0, description="‖y − A g(u, θ₀)‖")
    noise_norm: float = Field(0.0, ge=0, description="‖ε‖")
    R: float = Field(..., ge=0, description="σ_min(J(θ₀)) / (2 Lip(J))")
    R_prime: float = Field(..., ge=0, description="2‖y(0) − y‖ / (σ_A σ_min(J(θ₀)))")
    condition_eq5: bool = Field(
        ..., description="init_residual/σ_A < σ_min(J(θ₀))² / (4 Lip(J))"
    )
    rate: float = Field(..., ge=0, description="σ_A² σ_min(J(θ₀))² / (4m)")
    chernoff_k: int = Field(..., ge=1, description="Ширина из хвоста матричного Чернова")
    theorem2_width: Optional[int] = Field(None, ge=1, description="Ширина из оценки k ≥ C1 κ² n (...)²")
    theorem2_time: Optional[float] = Field(
        None, ge=0, description="Время C2·m·log(‖y(0) − y‖)/(σ_A² C_φ′²)"
    )

    degenerate: bool = Field(False, description="σ_min(J(θ₀)) = 0")
    notes: List[str] = Field(default_factory=list, description="Пометки о вырожденности")
    metadata: Dict[str, str] = Field(default_factory=dict, description="Принятые интерпретации")

    @model_validator(mode="after")
    def check_radius_equivalence(self) -> "TheoryReport":
        # на самой границе R′ = R две формы могут разойтись на ulp
        tie = math.isclose(self.R_prime, self.R, rel_tol=RADIUS_TIE_RTOL)
        if not tie and self.condition_eq5 != (self.R_prime < self.R):
            raise ValueError(
                f"condition_eq5={self.condition_eq5} disagrees with "
                f"R_prime={self.R_prime} < R={self.R}"
            )
        if self.sigma_min_J0 > 0 and not self.rate > 0:
            raise ValueError("rate must be positive when sigma_min_J0 > 0")
        return self


class ProbeSummary(FrozenDTO):
    """Эмпирическое распределение проверочной величины"""

    name: str = Field(..., description="Имя проверки")
    trials: int = Field(..., ge=1)
    fraction: float = Field(..., ge=0, le=1, description="Доля испытаний, где оценка выполнена")
    min: float
    median: float
    max: float
    threshold: Optional[float] = Field(None, description="Порог/граница проверки")
    criterion: str = Field(..., description="Условие прохождения")
    passed: bool
    details: Dict[str, Any] = Field(default_factory=dict)


class VerifySummary(FrozenDTO, ProvenanceMixin):
    """Итог проверки лемм"""

    lemma2_sigma_min: ProbeSummary
    lemma3_lipschitz: ProbeSummary
    lemma4_init_error: ProbeSummary
    all_passed: bool
