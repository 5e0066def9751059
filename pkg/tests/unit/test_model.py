# tests/unit/test_model.py
import math

import numpy as np
import pytest

from app.core.activation import get_activation
from app.core.exceptions import ValidationError
from app.core.model import (
    DipNetwork,
    forward,
    from_snapshot,
    init_network,
    jacobian,
    jacobian_difference_norm,
    jacobian_gram,
    sigma_min_jacobian,
    to_snapshot,
)

ACTIVATIONS = ["sigmoid", "tanh", "softplus", "linear"]


def finite_difference_jacobian(net: DipNetwork, h: float = 1e-6) -> np.ndarray:
    J = np.zeros((net.n, net.k * net.d))
    base = net.W.copy()
    for index in range(net.k * net.d):
        i, j = divmod(index, net.d)
        plus, minus = base.copy(), base.copy()
        plus[i, j] += h
        minus[i, j] -= h
        J[:, index] = (net.forward(plus) - net.forward(minus)) / (2 * h)
    return J


def random_small_nets(name: str, count: int = 20):
    activation = get_activation(name)
    rng = np.random.default_rng(2024)
    for seed in range(count):
        k, d, n = rng.integers(1, 6), rng.integers(1, 7), rng.integers(1, 5)
        yield init_network(int(k), int(d), int(n), activation, seed=seed)


class TestInitialization:
    def test_shapes_and_unit_input(self, small_net):
        assert small_net.u.shape == (8,)
        assert small_net.W.shape == (50, 8)
        assert small_net.V.shape == (4, 50)
        assert np.linalg.norm(small_net.u) == pytest.approx(1.0)
        assert small_net.num_params == 400

    def test_same_seed_same_network(self, sigmoid):
        a = init_network(10, 4, 3, sigmoid, seed=5)
        b = init_network(10, 4, 3, sigmoid, seed=5)
        np.testing.assert_array_equal(a.W, b.W)
        np.testing.assert_array_equal(a.V, b.V)
        np.testing.assert_array_equal(a.u, b.u)

    def test_rademacher_entries(self, small_net):
        assert set(np.unique(small_net.V)) <= {-1.0, 1.0}
        assert small_net.D == 1.0

    def test_uniform_entries_bounded(self, sigmoid):
        net = init_network(200, 3, 5, sigmoid, seed=1, v_distribution="uniform")
        assert net.D == pytest.approx(math.sqrt(3.0))
        assert np.max(np.abs(net.V)) <= net.D
        assert np.var(net.V) == pytest.approx(1.0, abs=0.1)

    def test_rademacher_columns_have_identity_covariance(self, sigmoid):
        for seed in range(10):
            net = init_network(k=10**5, d=1, n=4, activation=sigmoid, seed=seed)
            covariance = net.V @ net.V.T / net.k
            assert np.linalg.norm(covariance - np.eye(4), 2) < 0.05

    @pytest.mark.parametrize("field", ["k", "d", "n"])
    def test_zero_dimension_rejected(self, sigmoid, field):
        dims = {"k": 3, "d": 3, "n": 3}
        dims[field] = 0
        with pytest.raises(ValidationError) as exc:
            init_network(activation=sigmoid, seed=0, **dims)
        assert exc.value.field == field

    def test_unknown_v_distribution(self, sigmoid):
        with pytest.raises(ValidationError):
            init_network(3, 3, 3, sigmoid, seed=0, v_distribution="cauchy")

    def test_inconsistent_shapes(self, sigmoid):
        with pytest.raises(ValidationError):
            DipNetwork(u=np.ones(3), W=np.ones((4, 2)), V=np.ones((2, 4)), activation=sigmoid, D=1.0)


class TestForward:
    def test_forward_formula(self, small_net):
        expected = small_net.V @ small_net.activation(small_net.W @ small_net.u) / math.sqrt(50)
        np.testing.assert_allclose(forward(small_net), expected)

    def test_single_neuron_at_zero(self, sigmoid):
        net = DipNetwork(u=np.array([0.6, 0.8]), W=np.zeros((1, 2)), V=np.ones((1, 1)), activation=sigmoid, D=1.0)
        np.testing.assert_allclose(forward(net), [0.5])

    def test_two_neuron_closed_form(self, sigmoid):
        a, b, c, e = 0.3, -1.2, 1.0, -1.0
        net = DipNetwork(
            u=np.array([1.0]), W=np.array([[a], [b]]), V=np.array([[c, e]]), activation=sigmoid, D=1.0
        )
        expected = (c * sigmoid(a) + e * sigmoid(b)) / math.sqrt(2)
        assert forward(net)[0] == pytest.approx(expected, rel=1e-14)

    def test_forward_is_homogeneous_in_V(self, small_net):
        doubled = DipNetwork(
            u=small_net.u, W=small_net.W, V=2 * small_net.V, activation=small_net.activation, D=2.0
        )
        np.testing.assert_allclose(forward(doubled), 2 * forward(small_net), rtol=1e-14)

    def test_drift_and_reset(self, small_net):
        small_net.W += 0.5
        assert small_net.drift() == pytest.approx(0.5 * math.sqrt(400))
        small_net.reset()
        assert small_net.drift() == 0.0

    def test_copy_is_independent(self, small_net):
        clone = small_net.copy()
        clone.W += 1.0
        assert small_net.drift() == 0.0
        np.testing.assert_array_equal(clone.W0, small_net.W0)


class TestJacobian:
    @pytest.mark.parametrize("name", ACTIVATIONS)
    def test_matches_central_differences(self, name):
        for net in random_small_nets(name):
            J = jacobian(net)
            J_fd = finite_difference_jacobian(net)
            denom = max(np.linalg.norm(J_fd), 1e-12)
            assert np.linalg.norm(J - J_fd) / denom < 1e-6

    @pytest.mark.parametrize("name", ACTIVATIONS)
    def test_gram_identity(self, name):
        for net in random_small_nets(name):
            J = jacobian(net)
            H = jacobian_gram(net)
            norm_H = np.linalg.norm(H)
            if norm_H == 0:
                continue
            assert np.linalg.norm(H - J @ J.T) / norm_H < 1e-10

    def test_orthogonal_linear_sigma_min(self, orthogonal_linear_net):
        net = orthogonal_linear_net(n=3)
        np.testing.assert_allclose(jacobian_gram(net), np.eye(3), atol=1e-14)
        assert sigma_min_jacobian(net) == pytest.approx(1.0)

    def test_sigma_min_matches_svd(self, small_net):
        s = np.linalg.svd(jacobian(small_net), compute_uv=False)
        assert sigma_min_jacobian(small_net) == pytest.approx(s[-1], rel=1e-8)

    def test_hand_computed_single_neuron(self, sigmoid):
        # J = 2·φ′(0)·uᵀ = (0.5, 0), H = [0.25]
        net = DipNetwork(u=np.array([1.0, 0.0]), W=np.zeros((1, 2)), V=np.array([[2.0]]), activation=sigmoid, D=2.0)
        np.testing.assert_allclose(jacobian(net), [[0.5, 0.0]])
        np.testing.assert_allclose(jacobian_gram(net), [[0.25]])
        assert sigma_min_jacobian(net) == pytest.approx(0.5)

    @pytest.mark.parametrize("seed", range(10))
    def test_fewer_neurons_than_outputs_is_exactly_singular(self, sigmoid, seed):
        net = init_network(k=2, d=1, n=4, activation=sigmoid, seed=seed)
        assert sigma_min_jacobian(net) == 0.0

    def test_numerically_singular_gram_is_zero(self, sigmoid):
        # одинаковые строки V: H имеет ранг 1 при k ≥ n
        V = np.ones((2, 3))
        net = DipNetwork(u=np.array([1.0]), W=np.array([[0.1], [0.7], [-0.4]]), V=V, activation=sigmoid, D=1.0)
        assert sigma_min_jacobian(net) == 0.0

    def test_difference_norm_matches_explicit(self, small_net):
        rng = np.random.default_rng(0)
        W = rng.standard_normal(small_net.W.shape)
        W_tilde = W + 0.1 * rng.standard_normal(small_net.W.shape)
        explicit = np.linalg.norm(jacobian(small_net, W) - jacobian(small_net, W_tilde), 2)
        assert jacobian_difference_norm(small_net, W, W_tilde) == pytest.approx(explicit, rel=1e-8)

    def test_difference_norm_zero_for_equal_weights(self, small_net):
        assert jacobian_difference_norm(small_net, small_net.W, small_net.W) == 0.0


class TestSnapshot:
    def test_seed_snapshot_rebuilds_network(self, small_net):
        rebuilt = from_snapshot(to_snapshot(small_net))
        np.testing.assert_array_equal(rebuilt.W, small_net.W)
        np.testing.assert_array_equal(rebuilt.V, small_net.V)

    def test_matrix_snapshot_keeps_trained_weights(self, small_net):
        small_net.W += 0.25
        snapshot = to_snapshot(small_net, include_matrices=True)
        rebuilt = from_snapshot(snapshot)
        np.testing.assert_allclose(rebuilt.W, small_net.W)
        assert rebuilt.drift() == pytest.approx(small_net.drift())
