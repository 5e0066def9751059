# app/core/flow/loss.py
import math
from typing import Optional, Tuple

import numpy as np

from app.core.model import DipNetwork
from app.core.problem import InverseProblem


def residual(net: DipNetwork, prob: InverseProblem, W: Optional[np.ndarray] = None) -> np.ndarray:
    """r = A g(u, W) − y"""
    return prob.A @ net.forward(W) - prob.y


def loss(net: DipNetwork, prob: InverseProblem, W: Optional[np.ndarray] = None) -> float:
    """L = ‖A g(u, W) − y‖² / (2m)"""
    r = residual(net, prob, W)
    return float(r @ r) / (2.0 * prob.m)


def residual_and_gradient(
    net: DipNetwork, prob: InverseProblem, W: Optional[np.ndarray] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Невязка и градиент за один проход

    Строка i градиента: φ′(Wⁱu)·(V_iᵀ Aᵀ r)·uᵀ / (m√k), якобиан не строится.
    """
    z = net.preactivations(W)
    sqrt_k = math.sqrt(net.k)
    output = net.V @ net.activation.value(z) / sqrt_k
    r = prob.A @ output - prob.y
    back = net.V.T @ (prob.A.T @ r)
    coeffs = net.activation.first_derivative(z) * back / (prob.m * sqrt_k)
    return r, np.outer(coeffs, net.u)


def loss_gradient(
    net: DipNetwork, prob: InverseProblem, W: Optional[np.ndarray] = None
) -> np.ndarray:
    """∇_W L, матрица k×d"""
    _, grad = residual_and_gradient(net, prob, W)
    return grad
