"""
Activation module - гладкие активации и их гауссовы константы
"""
from .base import ActivationSpec
from .quadrature import MomentOrder, gaussian_moment, monte_carlo_moment
from .registry import (
    custom_activation,
    derivative_bound,
    get_activation,
    list_activations,
    registry,
)

__all__ = [
    "ActivationSpec",
    "MomentOrder",
    "gaussian_moment",
    "monte_carlo_moment",
    "derivative_bound",
    "get_activation",
    "list_activations",
    "custom_activation",
    "registry",
]
