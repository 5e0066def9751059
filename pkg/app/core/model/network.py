# app/core/model/network.py
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from app.core.activation import ActivationSpec
from app.core.exceptions import ValidationError


@dataclass
class DipNetwork:
    """
    Двухслойный генератор g(u, W) = V φ(W u) / √k

    Обучается только W (k×d); u (d) и V (n×k) фиксируются при инициализации.
    Параметры W разворачиваются построчно по нейронам: индекс i·d + j.
    """

    u: np.ndarray
    W: np.ndarray
    V: np.ndarray
    activation: ActivationSpec
    D: float
    seed: Optional[int] = None
    v_distribution: str = "rademacher"
    W0: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.u = np.asarray(self.u, dtype=float)
        self.W = np.array(self.W, dtype=float)
        self.V = np.asarray(self.V, dtype=float)
        k, d = self.W.shape
        n, k_v = self.V.shape
        if self.u.shape != (d,) or k_v != k:
            raise ValidationError(
                f"Inconsistent shapes: u {self.u.shape}, W {self.W.shape}, V {self.V.shape}",
                field="shapes",
            )
        self.W0 = self.W.copy()

    @property
    def k(self) -> int:
        return self.W.shape[0]

    @property
    def d(self) -> int:
        return self.W.shape[1]

    @property
    def n(self) -> int:
        return self.V.shape[0]

    @property
    def num_params(self) -> int:
        return self.k * self.d

    def _weights(self, W: Optional[np.ndarray]) -> np.ndarray:
        return self.W if W is None else np.asarray(W, dtype=float)

    def preactivations(self, W: Optional[np.ndarray] = None) -> np.ndarray:
        """z = W u, длина k"""
        return self._weights(W) @ self.u

    def forward(self, W: Optional[np.ndarray] = None) -> np.ndarray:
        """Выход сети V φ(W u) / √k"""
        z = self.preactivations(W)
        return self.V @ self.activation.value(z) / math.sqrt(self.k)

    def drift(self) -> float:
        """‖W − W(0)‖_F"""
        return float(np.linalg.norm(self.W - self.W0))

    def reset(self):
        """Вернуть веса к инициализации"""
        self.W = self.W0.copy()

    def copy(self) -> "DipNetwork":
        clone = DipNetwork(
            u=self.u,
            W=self.W0,
            V=self.V,
            activation=self.activation,
            D=self.D,
            seed=self.seed,
            v_distribution=self.v_distribution,
        )
        clone.W = self.W.copy()
        return clone


def forward(net: DipNetwork) -> np.ndarray:
    return net.forward()
