# tests/conftest.py
import math

import numpy as np
import pytest

from app.core.activation import get_activation
from app.core.model import DipNetwork, init_network
from app.core.problem import make_problem


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="запустить длительные тесты"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="нужен --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def sigmoid():
    return get_activation("sigmoid")


@pytest.fixture
def linear():
    return get_activation("linear")


@pytest.fixture
def small_net(sigmoid):
    return init_network(k=50, d=8, n=4, activation=sigmoid, seed=123)


@pytest.fixture
def small_problem():
    return make_problem(m=3, n=4, noise_level=0.0, seed=321)


@pytest.fixture
def orthogonal_linear_net(linear):
    """
    Линейная сеть с k = n, u = e₁ и V = √k·I: J Jᵀ = I, σ_min(J) = 1
    """

    def build(n: int = 3, d: int = 2) -> DipNetwork:
        u = np.zeros(d)
        u[0] = 1.0
        W = np.zeros((n, d))
        V = math.sqrt(n) * np.eye(n)
        return DipNetwork(u=u, W=W, V=V, activation=linear, D=math.sqrt(n))

    return build
