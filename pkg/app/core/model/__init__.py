"""
Model module - двухслойный генератор DIP и его якобиан
"""
from .factory import V_DISTRIBUTIONS, from_snapshot, init_network, to_snapshot
from .jacobian import (
    jacobian,
    jacobian_difference_norm,
    jacobian_gram,
    sigma_min_jacobian,
)
from .network import DipNetwork, forward

__all__ = [
    "DipNetwork",
    "V_DISTRIBUTIONS",
    "init_network",
    "forward",
    "jacobian",
    "jacobian_gram",
    "sigma_min_jacobian",
    "jacobian_difference_norm",
    "to_snapshot",
    "from_snapshot",
]
