# app/core/model/factory.py
import logging
import math
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from app.core.activation import ActivationSpec, get_activation
from app.core.exceptions import ValidationError
from app.core.model.network import DipNetwork
from app.schemas.snapshot import NetworkSnapshot

logger = logging.getLogger(__name__)


def _rademacher(rng: np.random.Generator, shape: Tuple[int, int]) -> np.ndarray:
    return rng.choice(np.array([-1.0, 1.0]), size=shape)


def _uniform(rng: np.random.Generator, shape: Tuple[int, int]) -> np.ndarray:
    # U[−√3, √3] имеет единичную дисперсию
    bound = math.sqrt(3.0)
    return rng.uniform(-bound, bound, size=shape)


# Распределения V: (генератор, граница D на элементы)
V_DISTRIBUTIONS: Dict[str, Tuple[Callable, float]] = {
    "rademacher": (_rademacher, 1.0),
    "uniform": (_uniform, math.sqrt(3.0)),
}


def init_network(
    k: int,
    d: int,
    n: int,
    activation: ActivationSpec,
    seed: int,
    v_distribution: str = "rademacher",
) -> DipNetwork:
    """
    Случайная инициализация сети

    u равномерно на сфере S^{d−1}, W(0) с iid N(0, 1), V с iid столбцами
    единичной ковариации и ограниченными элементами. Порядок выборок
    фиксирован (u, W, V), так что сеть определяется seed.

    Raises:
        ValidationError: нулевые размерности или неизвестное распределение V
    """
    for field_name, value in (("k", k), ("d", d), ("n", n)):
        if int(value) < 1:
            raise ValidationError(f"Dimension {field_name} must be >= 1, got {value}", field=field_name)
    if v_distribution not in V_DISTRIBUTIONS:
        raise ValidationError(
            f"Unknown V distribution '{v_distribution}'. Available: {sorted(V_DISTRIBUTIONS)}",
            field="v_distribution",
        )

    rng = np.random.default_rng(seed)
    g = rng.standard_normal(d)
    norm = np.linalg.norm(g)
    while norm == 0.0:
        g = rng.standard_normal(d)
        norm = np.linalg.norm(g)
    u = g / norm

    W = rng.standard_normal((k, d))
    sampler, D = V_DISTRIBUTIONS[v_distribution]
    V = sampler(rng, (n, k))

    return DipNetwork(
        u=u,
        W=W,
        V=V,
        activation=activation,
        D=D,
        seed=seed,
        v_distribution=v_distribution,
    )


def to_snapshot(net: DipNetwork, include_matrices: bool = False) -> NetworkSnapshot:
    """Снимок сети для возобновления эксперимента"""
    return NetworkSnapshot(
        k=net.k,
        d=net.d,
        n=net.n,
        seed=net.seed,
        activation=net.activation.name,
        v_distribution=net.v_distribution,
        u=net.u.tolist() if include_matrices else None,
        W=net.W.tolist() if include_matrices else None,
        W0=net.W0.tolist() if include_matrices else None,
        V=net.V.tolist() if include_matrices else None,
    )


def from_snapshot(snapshot: NetworkSnapshot) -> DipNetwork:
    """Восстановить сеть: по матрицам, если они сохранены, иначе по seed"""
    activation = get_activation(snapshot.activation)

    if snapshot.u is not None and snapshot.W0 is not None and snapshot.V is not None:
        V = np.asarray(snapshot.V, dtype=float)
        if snapshot.v_distribution in V_DISTRIBUTIONS:
            D = V_DISTRIBUTIONS[snapshot.v_distribution][1]
        else:
            D = float(np.max(np.abs(V)))
        net = DipNetwork(
            u=np.asarray(snapshot.u),
            W=np.asarray(snapshot.W0),
            V=V,
            activation=activation,
            D=D,
            seed=snapshot.seed,
            v_distribution=snapshot.v_distribution,
        )
        if snapshot.W is not None:
            net.W = np.asarray(snapshot.W, dtype=float)
        return net

    if snapshot.seed is None:
        raise ValidationError("Snapshot has neither matrices nor seed", field="seed")
    return init_network(
        snapshot.k,
        snapshot.d,
        snapshot.n,
        activation,
        snapshot.seed,
        snapshot.v_distribution,
    )
