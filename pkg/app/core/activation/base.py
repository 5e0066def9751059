# app/core/activation/base.py
from dataclasses import dataclass
from typing import Callable

import numpy as np

ScalarMap = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ActivationSpec:
    """
    Гладкая активация с ограниченными производными

    B ограничивает и |φ′|, и |φ″|; C_phi и C_phi_prime: гауссовы моменты
    √E[φ(g)²] и √E[φ′(g)²], g ~ N(0, 1).
    """

    name: str
    value: ScalarMap
    first_derivative: ScalarMap
    second_derivative: ScalarMap
    B: float
    C_phi: float
    C_phi_prime: float

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.value(x)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "B": self.B,
            "C_phi": self.C_phi,
            "C_phi_prime": self.C_phi_prime,
        }
