# tests/unit/test_flow.py
import math
from dataclasses import replace

import numpy as np
import pytest

from app.core.activation import get_activation
from app.core.flow import (
    check_envelope,
    check_lemma1,
    early_stopping_time,
    loss,
    loss_gradient,
    residual,
    run_flow,
    run_flow_until,
)
from app.core.model import DipNetwork, init_network
from app.core.problem import make_problem
from app.core.theory import assemble_report, build_report
from app.schemas import FlowConfig, FlowOutcome, Trajectory, TrajectorySample


def numeric_gradient(net, prob, h=1e-6):
    grad = np.zeros_like(net.W)
    for i in range(net.k):
        for j in range(net.d):
            plus, minus = net.W.copy(), net.W.copy()
            plus[i, j] += h
            minus[i, j] -= h
            grad[i, j] = (loss(net, prob, plus) - loss(net, prob, minus)) / (2 * h)
    return grad


def report_with(rate=0.5, sigma_min=1.0, R_prime=2.0, m=1):
    """Отчёт с заданными скоростью и радиусами для проверок траекторий"""
    sigma_A = math.sqrt(4 * m * rate) / sigma_min
    init_residual = R_prime * sigma_A * sigma_min / 2
    return assemble_report(
        m=m,
        n=1,
        k=1,
        d=1,
        activation="linear",
        B=1.0,
        D=1.0,
        C_phi=1.0,
        C_phi_prime=1.0,
        sigma_A=max(sigma_A, 1e-12),
        kappa_A=1.0,
        sigma_min_J0=sigma_min,
        lip_J_bound=0.01,
        init_residual=init_residual,
    )


def synthetic_trajectory(residuals, eta=0.1, drifts=None, sigmas=None):
    samples = []
    for step, r in enumerate(residuals):
        samples.append(
            TrajectorySample(
                step=step,
                time=step * eta,
                loss=r**2 / 2,
                residual_y=r,
                residual_ybar=r,
                param_drift=drifts[step] if drifts else 0.0,
                sigma_min_J=sigmas[step] if sigmas else None,
            )
        )
    return Trajectory(samples=samples, outcome=FlowOutcome.STEP_CAP, step_size=eta)


class TestLoss:
    def test_gradient_matches_finite_differences(self, sigmoid):
        net = init_network(6, 3, 4, sigmoid, seed=1)
        prob = make_problem(3, 4, 0.0, seed=2)
        np.testing.assert_allclose(loss_gradient(net, prob), numeric_gradient(net, prob), atol=1e-8)

    def test_loss_definition(self, small_net, small_problem):
        r = residual(small_net, small_problem)
        assert loss(small_net, small_problem) == pytest.approx(float(r @ r) / 6)

    def test_quadratic_bowl_gradient(self, linear):
        # k = d = n = 1, A = [1], y = 0: L = W²/2, ∇L = W
        net = DipNetwork(u=np.array([1.0]), W=np.array([[1.7]]), V=np.array([[1.0]]), activation=linear, D=1.0)
        prob = replace(make_problem(1, 1, 0.0, seed=0, operator_kind="identity"), y=np.zeros(1))
        np.testing.assert_allclose(loss_gradient(net, prob), [[1.7]], rtol=1e-14)
        assert loss(net, prob) == pytest.approx(1.7**2 / 2)

    def test_unit_residual_loss(self, orthogonal_linear_net):
        # A = I, y = 0, выход e₁: L = 1/(2n)
        n = 4
        net = orthogonal_linear_net(n=n)
        net.W[0, 0] = 1.0
        prob = replace(make_problem(n, n, 0.0, seed=0, operator_kind="identity"), y=np.zeros(n))
        np.testing.assert_allclose(net.forward(), np.eye(n)[0], atol=1e-15)
        assert loss(net, prob) == pytest.approx(1 / (2 * n))


class TestRunFlow:
    def test_trivial_instance_converges_at_step_zero(self, small_net, small_problem):
        cfg = FlowConfig(loss_threshold=1e6)
        traj = run_flow(small_net, small_problem, cfg)
        assert traj.outcome == FlowOutcome.CONVERGED
        assert len(traj.samples) == 1
        assert traj.steps_taken == 0

    def test_step_cap_and_recording(self, small_net, small_problem):
        cfg = FlowConfig(step_size=0.5, max_steps=25, loss_threshold=1e-30, record_every=10)
        traj = run_flow(small_net, small_problem, cfg)
        assert traj.outcome == FlowOutcome.STEP_CAP
        assert traj.column("step") == [0, 10, 20, 25]
        assert traj.column("time") == pytest.approx([0, 5, 10, 12.5])

    def test_loss_decreases_with_small_step(self, small_net, small_problem):
        cfg = FlowConfig(step_size=0.1, max_steps=200, loss_threshold=1e-30, record_every=20)
        losses = run_flow(small_net, small_problem, cfg).column("loss")
        assert all(b <= a for a, b in zip(losses, losses[1:]))

    @pytest.mark.parametrize("seed", range(3))
    def test_loss_non_increasing_at_unit_step(self, sigmoid, seed):
        net = init_network(2000, 100, 10, sigmoid, seed=seed)
        prob = make_problem(5, 10, 0.0, seed=100 + seed)
        cfg = FlowConfig(step_size=1.0, max_steps=300, loss_threshold=1e-30, record_every=1)
        losses = run_flow(net, prob, cfg).column("loss")
        assert all(b <= a + 1e-12 for a, b in zip(losses, losses[1:]))

    def test_huge_step_diverges_without_exception(self, linear):
        # линейная φ: при η·λ_max(M) > 2 невязка растёт геометрически
        net = init_network(4, 3, 2, linear, seed=8)
        prob = make_problem(2, 2, 0.0, seed=9)
        cfg = FlowConfig(step_size=100.0, max_steps=5000, record_every=1000)
        with np.errstate(over="ignore", invalid="ignore"):
            traj = run_flow(net, prob, cfg)
        assert traj.outcome == FlowOutcome.DIVERGED
        assert not math.isfinite(traj.final.loss)

    def test_drift_and_sigma_tracking(self, small_net, small_problem):
        cfg = FlowConfig(step_size=0.5, max_steps=20, record_every=5, track_sigma_min=True)
        traj = run_flow(small_net, small_problem, cfg)
        assert traj.initial.param_drift == 0.0
        assert traj.final.param_drift == pytest.approx(small_net.drift())
        assert all(s.sigma_min_J is not None for s in traj.samples)

    def test_linear_dynamics_oracle(self, linear):
        # Линейная φ: r_{t+1} = (I − η M) r_t, M = A V Vᵀ Aᵀ ‖u‖² / (m k)
        net = init_network(4, 3, 2, linear, seed=8)
        prob = make_problem(2, 2, 0.0, seed=9)
        eta = 0.05
        M = prob.A @ net.V @ net.V.T @ prob.A.T / (prob.m * net.k)
        r = residual(net, prob)
        cfg = FlowConfig(step_size=eta, max_steps=30, loss_threshold=1e-30, record_every=1)
        traj = run_flow(net, prob, cfg)
        for sample in traj.samples:
            expected = np.linalg.matrix_power(np.eye(2) - eta * M, sample.step) @ r
            assert sample.residual_y == pytest.approx(np.linalg.norm(expected), rel=1e-9)

    def test_run_until_takes_ceil_steps(self, small_net, small_problem):
        cfg = FlowConfig(step_size=0.3, record_every=1000)
        traj = run_flow_until(small_net, small_problem, cfg, t_stop=1.0)
        assert traj.steps_taken == 4
        assert traj.final.time == pytest.approx(1.2)

    def test_run_until_zero_time(self, small_net, small_problem):
        traj = run_flow_until(small_net, small_problem, FlowConfig(), t_stop=0.0)
        assert traj.steps_taken == 0


class TestTrajectory:
    def test_steps_must_increase(self):
        sample = TrajectorySample(step=0, time=0, loss=1, residual_y=1, residual_ybar=1, param_drift=0)
        with pytest.raises(ValueError):
            Trajectory(samples=[sample, sample], outcome=FlowOutcome.STEP_CAP, step_size=1.0)

    def test_unknown_column(self):
        traj = synthetic_trajectory([1.0])
        with pytest.raises(KeyError):
            traj.column("nope")


class TestStopping:
    def test_early_stopping_formula(self):
        report = report_with(rate=0.25, sigma_min=1.0, m=1)
        # t* = 4m·log(r0/‖ε‖)/(σ_A² σ_min²) = log(r0/‖ε‖)/rate
        assert early_stopping_time(report, 10.0, 1.0) == pytest.approx(math.log(10) / 0.25)

    def test_early_stopping_branches(self):
        report = report_with()
        assert early_stopping_time(report, 0.5, 1.0) == 0.0
        assert early_stopping_time(report, 1.0, 0.0) == math.inf

    def test_more_noise_stops_earlier(self):
        report = report_with()
        assert early_stopping_time(report, 10.0, 2.0) < early_stopping_time(report, 10.0, 1.0)

    def test_envelope_holds_for_exact_decay(self):
        report = report_with(rate=0.5)
        times = np.arange(20) * 0.1
        traj = synthetic_trajectory(list(3.0 * np.exp(-0.6 * times)))
        assert check_envelope(traj, report) == []

    def test_envelope_violation_detected(self):
        report = report_with(rate=0.5)
        times = np.arange(20) * 0.1
        traj = synthetic_trajectory(list(3.0 * np.exp(-0.2 * times)))
        violations = check_envelope(traj, report)
        assert violations and violations[0].step > 0

    def test_lemma1_checks_drift_and_sigma(self):
        report = report_with(sigma_min=1.0, R_prime=2.0)
        traj = synthetic_trajectory(
            [1.0, 0.5, 0.25], drifts=[0.0, 1.0, 2.5], sigmas=[1.0, 0.4, 0.9]
        )
        assert [s.step for s in check_lemma1(traj, report)] == [1, 2]

    def test_build_report_envelope_on_real_run(self):
        # широкая линейная сеть, A = I: скорость спада не меньше теоретической
        linear = get_activation("linear")
        net = init_network(400, 2, 2, linear, seed=3)
        prob = make_problem(2, 2, 0.0, seed=4, operator_kind="identity")
        report = build_report(net, prob)
        cfg = FlowConfig(step_size=0.05, max_steps=400, loss_threshold=1e-30, record_every=10)
        traj = run_flow(net, prob, cfg)
        assert check_envelope(traj, report) == []
