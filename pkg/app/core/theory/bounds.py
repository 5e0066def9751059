# app/core/theory/bounds.py
import logging
import math

import numpy as np

from app.core.activation import ActivationSpec
from app.core.exceptions import ValidationError
from app.core.model import DipNetwork
from app.core.problem import InverseProblem
from app.schemas import TheoryReport

logger = logging.getLogger(__name__)


def lipschitz_bound(B: float, D: float, n: int, k: int) -> float:
    """B·D·√(n/k)"""
    return B * D * math.sqrt(n / k)


def lip_jacobian_bound(net: DipNetwork) -> float:
    """Аналитическая граница Lip(J) ≤ B·D·√(n/k) для сети"""
    return lipschitz_bound(net.activation.B, net.D, net.n, net.k)


def chernoff_required_k(
    n: int, activation: ActivationSpec, D: float, target_failure: float
) -> int:
    """
    Наименьшее k с n·exp(−k·C_φ′²/(8B²D²n)) ≤ target_failure

    Хвост матричного неравенства Чернова при δ = 1/2:
    k = ⌈8B²D²n·log(n/target_failure)/C_φ′²⌉.
    """
    if not 0.0 < target_failure < 1.0:
        raise ValidationError(
            f"target_failure must lie in (0, 1), got {target_failure}",
            field="target_failure",
        )
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}", field="n")
    if activation.C_phi_prime <= 0:
        raise ValidationError(
            f"Activation '{activation.name}' has C_phi_prime = 0", field="activation"
        )
    log_ratio = math.log(n) - math.log(target_failure)
    k = 8.0 * activation.B**2 * D**2 * n * log_ratio / activation.C_phi_prime**2
    return max(1, math.ceil(k))


def width_factor(n: int, m: int, d: int, kappa_A: float) -> float:
    """κ(A)²·n·(√n(√log d + 1) + √m)², оценка ширины без константы C1"""
    inner = math.sqrt(n) * (math.sqrt(math.log(d)) + 1.0) + math.sqrt(m)
    return kappa_A**2 * n * inner**2


def theorem2_width(n: int, m: int, d: int, kappa_A: float, C1: float) -> int:
    """⌈C1·κ(A)²·n·(√n(√log d + 1) + √m)²⌉"""
    if kappa_A < 1:
        raise ValidationError(f"kappa_A must be >= 1, got {kappa_A}", field="kappa_A")
    if C1 <= 0:
        raise ValidationError(f"C1 must be positive, got {C1}", field="C1")
    return max(1, math.ceil(C1 * width_factor(n, m, d, kappa_A)))


def init_error_bound(
    prob: InverseProblem, activation: ActivationSpec, D: float, d: int
) -> float:
    """
    Граница начальной ошибки ‖A‖(C√(n log d) + √n‖x̄‖_∞ + √m‖ε‖_∞)

    C = C_φ + √2·B·D; x₀ в формулировке леммы трактуется как x̄.
    """
    C = activation.C_phi + math.sqrt(2.0) * activation.B * D
    n, m = prob.n, prob.m
    signal = math.sqrt(n) * float(np.max(np.abs(prob.x_bar)))
    noise = math.sqrt(m) * float(np.max(np.abs(prob.eps))) if m else 0.0
    return prob.operator_norm * (C * math.sqrt(n * math.log(d)) + signal + noise)


def theorem2_time(report: TheoryReport, C2: float) -> float:
    """
    Время C2·m·log(‖y − A g(u, W(0))‖)/(σ_A² C_φ′²)

    Отрицательный логарифм (невязка < 1) даёт 0.
    """
    if report.init_residual <= 0 or report.C_phi_prime <= 0:
        return 0.0
    value = C2 * report.m * math.log(report.init_residual) / (
        report.sigma_A**2 * report.C_phi_prime**2
    )
    return max(value, 0.0)
