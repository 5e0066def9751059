"""
Flow module - градиентный поток по первому слою и правила остановки
"""
from .loss import loss, loss_gradient, residual, residual_and_gradient
from .service import FlowIntegrator, run_flow, run_flow_until
from .stopping import check_envelope, check_lemma1, early_stopping_time

__all__ = [
    "loss",
    "loss_gradient",
    "residual",
    "residual_and_gradient",
    "FlowIntegrator",
    "run_flow",
    "run_flow_until",
    "early_stopping_time",
    "check_envelope",
    "check_lemma1",
]
