# app/core/theory/report.py
import logging
import math
from typing import Dict, List, Optional

import numpy as np

from app.application.config import theory_settings
from app.core.exceptions import ValidationError
from app.core.flow.loss import residual
from app.core.model import DipNetwork, sigma_min_jacobian
from app.core.problem import InverseProblem
from app.schemas import TheoryReport

from .bounds import chernoff_required_k, lip_jacobian_bound, theorem2_time, theorem2_width

logger = logging.getLogger(__name__)

INIT_ERROR_INTERPRETATION = "x0 in the initial-error bound is read as x_bar"


def _report_failure_target(n: int) -> float:
    """1/n для chernoff_k; при n = 1: запасная вероятность из настроек"""
    target = 1.0 / n
    if 0.0 < target < 1.0:
        return target
    return theory_settings.CHERNOFF_FALLBACK_FAILURE


def assemble_report(
    *,
    m: int,
    n: int,
    k: int,
    d: int,
    activation: str,
    B: float,
    D: float,
    C_phi: float,
    C_phi_prime: float,
    sigma_A: float,
    kappa_A: float,
    sigma_min_J0: float,
    lip_J_bound: float,
    init_residual: float,
    noise_norm: float = 0.0,
    chernoff_k: int = 1,
    theorem2_width: Optional[int] = None,
    metadata: Optional[Dict[str, str]] = None,
) -> TheoryReport:
    """
    Собрать отчёт из готовых величин

    R = σ_min/(2 Lip), R′ = 2 r₀/(σ_A σ_min); условие r₀/σ_A < σ_min²/(4 Lip)
    вычисляется напрямую, его согласие с R′ < R проверяет схема отчёта.
    """
    notes: List[str] = []
    degenerate = sigma_min_J0 <= 0.0
    condition = init_residual / sigma_A < sigma_min_J0**2 / (4.0 * lip_J_bound)
    if degenerate:
        R = 0.0
        R_prime = math.inf
        rate = 0.0
        notes.append(
            "sigma_min(J(theta_0)) = 0: Jacobian is rank deficient, "
            "the overparametrization condition cannot hold"
        )
        logger.warning(f"⚠️ Degenerate Jacobian at initialization (k={k}, n={n})")
    else:
        R = sigma_min_J0 / (2.0 * lip_J_bound)
        R_prime = 2.0 * init_residual / (sigma_A * sigma_min_J0)
        rate = sigma_A**2 * sigma_min_J0**2 / (4.0 * m)

    return TheoryReport(
        m=m,
        n=n,
        k=k,
        d=d,
        activation=activation,
        B=B,
        D=D,
        C_phi=C_phi,
        C_phi_prime=C_phi_prime,
        sigma_A=sigma_A,
        kappa_A=kappa_A,
        sigma_min_J0=sigma_min_J0,
        lip_J_bound=lip_J_bound,
        init_residual=init_residual,
        noise_norm=noise_norm,
        R=R,
        R_prime=R_prime,
        condition_eq5=condition,
        rate=rate,
        chernoff_k=chernoff_k,
        theorem2_width=theorem2_width,
        degenerate=degenerate,
        notes=notes,
        metadata=metadata or {},
    )


def build_report(
    net: DipNetwork,
    prob: InverseProblem,
    c1: Optional[float] = None,
    c2: Optional[float] = None,
) -> TheoryReport:
    """
    Теоретический отчёт для начальной точки θ₀ сети и задачи

    Args:
        net: свежеинициализированная сеть (W = W(0))
        prob: обратная задача
        c1: константа оценки ширины; по умолчанию THEORY_C1
        c2: константа оценки времени; по умолчанию THEORY_C2

    Returns:
        TheoryReport со всеми величинами теоремы и лемм
    """
    if net.n != prob.n:
        raise ValidationError(
            f"Network output size {net.n} != problem signal size {prob.n}", field="n"
        )
    activation = net.activation
    C1 = theory_settings.C1 if c1 is None else c1
    C2 = theory_settings.C2 if c2 is None else c2

    sigma_min_J0 = sigma_min_jacobian(net)
    init_residual = float(np.linalg.norm(residual(net, prob)))

    chernoff_k = (
        chernoff_required_k(net.n, activation, net.D, _report_failure_target(net.n))
        if activation.C_phi_prime > 0
        else 1
    )
    width = theorem2_width(net.n, prob.m, net.d, prob.kappa_A, C1)

    report = assemble_report(
        m=prob.m,
        n=net.n,
        k=net.k,
        d=net.d,
        activation=activation.name,
        B=activation.B,
        D=net.D,
        C_phi=activation.C_phi,
        C_phi_prime=activation.C_phi_prime,
        sigma_A=prob.sigma_A,
        kappa_A=prob.kappa_A,
        sigma_min_J0=sigma_min_J0,
        lip_J_bound=lip_jacobian_bound(net),
        init_residual=init_residual,
        noise_norm=prob.noise_norm,
        chernoff_k=chernoff_k,
        theorem2_width=width,
        metadata={
            "init_error_x0": INIT_ERROR_INTERPRETATION,
            "C1": repr(C1),
            "C2": repr(C2),
            "lip_J": "analytic B*D*sqrt(n/k)",
        },
    )
    report = report.model_copy(update={"theorem2_time": theorem2_time(report, C2)})
    logger.info(
        f"✅ Theory report: sigma_min_J0={report.sigma_min_J0:.4g}, "
        f"R={report.R:.4g}, R'={report.R_prime:.4g}, condition={report.condition_eq5}"
    )
    return report
