# app/core/activation/registry.py
import logging
import threading
from typing import Callable, Dict, List, Tuple

import numpy as np
from scipy.special import expit

from app.core.activation.base import ActivationSpec, ScalarMap
from app.core.activation.quadrature import MomentOrder, gaussian_moment
from app.core.exceptions import UnsupportedActivationError

logger = logging.getLogger(__name__)


def _sigmoid_d1(x: np.ndarray) -> np.ndarray:
    s = expit(x)
    return s * (1.0 - s)


def _sigmoid_d2(x: np.ndarray) -> np.ndarray:
    s = expit(x)
    return s * (1.0 - s) * (1.0 - 2.0 * s)


def _tanh_d1(x: np.ndarray) -> np.ndarray:
    t = np.tanh(x)
    return 1.0 - t * t


def _tanh_d2(x: np.ndarray) -> np.ndarray:
    t = np.tanh(x)
    return -2.0 * t * (1.0 - t * t)


def _softplus(x: np.ndarray) -> np.ndarray:
    return np.logaddexp(0.0, x)


def _linear(x: np.ndarray) -> np.ndarray:
    return np.asarray(x, dtype=float)


def _ones(x: np.ndarray) -> np.ndarray:
    return np.ones_like(np.asarray(x, dtype=float))


def _zeros(x: np.ndarray) -> np.ndarray:
    return np.zeros_like(np.asarray(x, dtype=float))


# (φ, φ′, φ″)
_MAPS: Dict[str, Tuple[ScalarMap, ScalarMap, ScalarMap]] = {
    "sigmoid": (expit, _sigmoid_d1, _sigmoid_d2),
    "tanh": (np.tanh, _tanh_d1, _tanh_d2),
    "softplus": (_softplus, expit, _sigmoid_d1),
    "linear": (_linear, _ones, _zeros),
}

# B = max(sup|φ′|, sup|φ″|):
#   sigmoid: sup|φ′| = 1/4 в нуле, sup|φ″| = 1/(6√3)
#   tanh: sup|φ′| = 1, sup|φ″| = 4/(3√3)
#   softplus: φ′ = sigmoid ≤ 1, φ″ ≤ 1/4
#   linear: φ′ ≡ 1, φ″ ≡ 0
_ANALYTIC_BOUNDS: Dict[str, float] = {
    "sigmoid": 0.25,
    "tanh": 1.0,
    "softplus": 1.0,
    "linear": 1.0,
}


def derivative_bound(spec: ActivationSpec) -> float:
    """Аналитическая константа B для поддерживаемой активации"""
    bound = _ANALYTIC_BOUNDS.get(spec.name)
    if bound is None:
        raise UnsupportedActivationError(spec.name, sorted(_ANALYTIC_BOUNDS))
    return bound


class ActivationRegistry:
    """
    Реестр активаций: строит спецификации лениво и кэширует их
    Константы C_phi, C_phi_prime считаются квадратурой один раз.
    """

    def __init__(self):
        self._specs: Dict[str, ActivationSpec] = {}
        self._lock = threading.Lock()

    def get(self, name: str) -> ActivationSpec:
        """Получить активацию по имени"""
        key = (name or "").strip().lower()
        with self._lock:
            spec = self._specs.get(key)
            if spec is None:
                spec = self._build(key)
                self._specs[key] = spec
        return spec

    def list_names(self) -> List[str]:
        return sorted(_MAPS)

    def _build(self, name: str) -> ActivationSpec:
        maps = _MAPS.get(name)
        if maps is None:
            raise UnsupportedActivationError(name, self.list_names())
        value, d1, d2 = maps

        if name == "linear":
            # E[g²] = 1 и φ′ ≡ 1: константы точные
            c_phi, c_phi_prime = 1.0, 1.0
        else:
            draft = ActivationSpec(name, value, d1, d2, 0.0, 0.0, 0.0)
            c_phi = gaussian_moment(draft, MomentOrder.VALUE)
            c_phi_prime = gaussian_moment(draft, MomentOrder.DERIVATIVE)

        spec = ActivationSpec(
            name=name,
            value=value,
            first_derivative=d1,
            second_derivative=d2,
            B=_ANALYTIC_BOUNDS[name],
            C_phi=c_phi,
            C_phi_prime=c_phi_prime,
        )
        logger.debug(
            f"Activation '{name}': B={spec.B}, C_phi={c_phi:.12f}, "
            f"C_phi_prime={c_phi_prime:.12f}"
        )
        return spec

    def clear(self):
        """Очистить кэш (для тестов)"""
        with self._lock:
            self._specs.clear()


registry = ActivationRegistry()


def get_activation(name: str) -> ActivationSpec:
    return registry.get(name)


def list_activations() -> List[str]:
    return registry.list_names()


def custom_activation(
    name: str,
    value: Callable[[np.ndarray], np.ndarray],
    first_derivative: Callable[[np.ndarray], np.ndarray],
    second_derivative: Callable[[np.ndarray], np.ndarray],
    B: float,
) -> ActivationSpec:
    """Активация вне реестра (заглушки в проверках); моменты: квадратурой"""
    draft = ActivationSpec(name, value, first_derivative, second_derivative, B, 0.0, 0.0)
    return ActivationSpec(
        name=name,
        value=value,
        first_derivative=first_derivative,
        second_derivative=second_derivative,
        B=B,
        C_phi=gaussian_moment(draft, MomentOrder.VALUE),
        C_phi_prime=gaussian_moment(draft, MomentOrder.DERIVATIVE),
    )
