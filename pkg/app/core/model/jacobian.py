# app/core/model/jacobian.py
import logging
import math
from typing import Optional

import numpy as np
from scipy.linalg import LinAlgError, eigh

from app.application.config import theory_settings
from app.core.exceptions import NumericalError
from app.core.model.network import DipNetwork

logger = logging.getLogger(__name__)


def jacobian(net: DipNetwork, W: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Якобиан выхода по W, матрица n×(k·d)

    Блок столбцов i (ширина d) равен φ′(Wⁱu)·V_i uᵀ / √k; порядок
    столбцов совпадает с W.reshape(-1) (построчно по нейронам).
    """
    slopes = net.activation.first_derivative(net.preactivations(W))
    scaled = net.V * slopes[None, :]
    J = scaled[:, :, None] * net.u[None, None, :]
    return J.reshape(net.n, net.k * net.d) / math.sqrt(net.k)


def _gram_from_slopes(net: DipNetwork, slopes: np.ndarray) -> np.ndarray:
    u_sq = float(net.u @ net.u)
    H = (net.V * (slopes**2)[None, :]) @ net.V.T
    H *= u_sq / net.k
    # симметризация убирает асимметрию округления
    return 0.5 * (H + H.T)


def jacobian_gram(net: DipNetwork, W: Optional[np.ndarray] = None) -> np.ndarray:
    """H = J Jᵀ = (‖u‖²/k) Σ φ′(Wⁱu)² V_i V_iᵀ, матрица n×n"""
    slopes = net.activation.first_derivative(net.preactivations(W))
    return _gram_from_slopes(net, slopes)


def _extreme_eigenvalue(H: np.ndarray, smallest: bool) -> float:
    index = 0 if smallest else H.shape[0] - 1
    try:
        value = eigh(H, eigvals_only=True, subset_by_index=[index, index])[0]
    except (LinAlgError, ValueError) as e:
        raise NumericalError(
            f"Eigen-solver failed on Gram matrix: {e}",
            diagnostics={
                "shape": list(H.shape),
                "finite": bool(np.isfinite(H).all()),
                "trace": float(np.trace(H)) if np.isfinite(H).all() else None,
            },
        )
    return float(value)


def sigma_min_jacobian(net: DipNetwork, W: Optional[np.ndarray] = None) -> float:
    """
    σ_min(J) = √λ_min(H); J не строится

    Столбцы J лежат в span{V_i}, поэтому при k < n ранг неполный и
    возвращается 0. Также обнуляется λ_min ≤ RANK_REL_TOL·n·λ_max.
    """
    if net.k < net.n:
        return 0.0
    H = jacobian_gram(net, W)
    lam_min = _extreme_eigenvalue(H, smallest=True)
    lam_max = _extreme_eigenvalue(H, smallest=False)
    if lam_min <= theory_settings.RANK_REL_TOL * net.n * lam_max:
        return 0.0
    return math.sqrt(lam_min)


def jacobian_difference_norm(
    net: DipNetwork, W: np.ndarray, W_tilde: np.ndarray
) -> float:
    """
    Спектральная норма J(W) − J(W̃)

    Разность имеет ту же блочную структуру с коэффициентами
    φ′(Wⁱu) − φ′(W̃ⁱu), поэтому норма берётся из её n×n матрицы Грама.
    """
    phi_prime = net.activation.first_derivative
    delta = phi_prime(net.preactivations(W)) - phi_prime(net.preactivations(W_tilde))
    lam = _extreme_eigenvalue(_gram_from_slopes(net, delta), smallest=False)
    return math.sqrt(max(lam, 0.0))
