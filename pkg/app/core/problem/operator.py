# app/core/problem/operator.py
import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.linalg import svd, svdvals

from app.application.config import theory_settings
from app.core.exceptions import DegenerateOperatorError

logger = logging.getLogger(__name__)


class SpectralSummary(NamedTuple):
    sigma_A: float
    kappa_A: float
    sigma_max: float
    rank: int


def _rank_cutoff(A: np.ndarray, sigma_max: float) -> float:
    return theory_settings.RANK_REL_TOL * max(A.shape) * sigma_max


def spectral_summary(A: np.ndarray) -> SpectralSummary:
    """
    σ_A, κ(A), σ_max и численный ранг A

    Сингулярные числа ниже RANK_REL_TOL·max(m, n)·σ_max считаются нулевыми,
    σ_A равно наименьшему из оставшихся.

    Raises:
        DegenerateOperatorError: у A нет ненулевых сингулярных чисел
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    s = svdvals(A) if A.size else np.zeros(0)
    if s.size == 0 or s[0] <= 0.0:
        raise DegenerateOperatorError(A.shape)
    sigma_max = float(s[0])
    retained = s[s > _rank_cutoff(A, sigma_max)]
    sigma_A = float(retained[-1])
    return SpectralSummary(
        sigma_A=sigma_A,
        kappa_A=sigma_max / sigma_A,
        sigma_max=sigma_max,
        rank=int(retained.size),
    )


def range_basis(A: np.ndarray) -> np.ndarray:
    """Ортонормированный базис ran(A), матрица m×rank"""
    U, s, _ = svd(np.asarray(A, dtype=float), full_matrices=False)
    if s.size == 0 or s[0] <= 0.0:
        raise DegenerateOperatorError(np.shape(A))
    rank = int(np.sum(s > _rank_cutoff(A, float(s[0]))))
    return U[:, :rank]


@dataclass(frozen=True)
class InverseProblem:
    """
    Линейная обратная задача y = A x̄ + ε

    ε лежит в ran(A), поэтому y ∈ ran(A).
    """

    A: np.ndarray
    x_bar: np.ndarray
    eps: np.ndarray
    y: np.ndarray
    y_bar: np.ndarray
    sigma_A: float
    kappa_A: float
    sigma_max: float
    rank: int
    operator_kind: str = "gaussian"
    noise_level: float = 0.0
    seed: Optional[int] = None
    signal_scale: float = 1.0

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def noise_norm(self) -> float:
        return float(np.linalg.norm(self.eps))

    @property
    def operator_norm(self) -> float:
        return self.sigma_max

    def range_residual(self) -> float:
        """‖y − P_ran(A) y‖ / ‖y‖ (0 для нулевого y)"""
        norm_y = float(np.linalg.norm(self.y))
        if norm_y == 0.0:
            return 0.0
        U = range_basis(self.A)
        residual = self.y - U @ (U.T @ self.y)
        return float(np.linalg.norm(residual)) / norm_y
