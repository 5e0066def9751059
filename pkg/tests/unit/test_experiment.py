# tests/unit/test_experiment.py
import math
import threading

import numpy as np
import pytest

from app.core.exceptions import (
    BudgetExceededError,
    InsufficientDataError,
    ResumeMismatchError,
    ValidationError,
)
from app.core.experiment import (
    GridRunner,
    calibrate_c1,
    early_stopping_experiment,
    estimate_cost,
    fit_decay_rate,
    monotonicity_violations,
    run_grid,
    success_frequencies,
)
from app.core.flow import run_flow
from app.core.model import init_network
from app.core.problem import make_problem
from app.schemas import (
    CellResult,
    ExperimentParams,
    FlowConfig,
    FlowOutcome,
    GridResult,
    GridSpec,
    Trajectory,
    TrajectorySample,
)
from app.workers.pool import WorkerPool


def grid_spec(**overrides) -> GridSpec:
    data = {
        "axis1": {"name": "k", "values": [20, 40]},
        "axis2": {"name": "n", "values": [2, 3]},
        "fixed": {"m": 2, "d": 3, "activation": "sigmoid"},
        "trials_per_cell": 3,
        "flow": {"step_size": 1.0, "max_steps": 50, "loss_threshold": 1e-3, "record_every": 10},
        "master_seed": 5,
    }
    data.update(overrides)
    return GridSpec.model_validate(data)


def exponential_trajectory(rate: float, samples: int = 20, eta: float = 0.1) -> Trajectory:
    points = []
    for step in range(samples):
        t = step * eta
        r = math.exp(-rate * t)
        points.append(
            TrajectorySample(
                step=step, time=t, loss=r * r / 2, residual_y=r, residual_ybar=r, param_drift=0.0
            )
        )
    return Trajectory(samples=points, outcome=FlowOutcome.STEP_CAP, step_size=eta)


class TestGridSpec:
    def test_axes_must_differ(self):
        with pytest.raises(ValueError):
            grid_spec(axis2={"name": "k", "values": [1]})

    def test_axis_cannot_be_fixed(self):
        with pytest.raises(ValueError):
            grid_spec(fixed={"m": 2, "d": 3, "n": 4})

    def test_missing_fixed_dimension(self):
        with pytest.raises(ValueError):
            grid_spec(fixed={"m": 2})

    def test_nonpositive_axis_values(self):
        with pytest.raises(ValueError):
            grid_spec(axis1={"name": "k", "values": [0, 10]})

    def test_cell_dimensions(self):
        spec = grid_spec()
        assert spec.cell_dimensions(1, 0) == {"k": 40, "n": 2, "m": 2, "d": 3}


class TestRunGrid:
    def test_trivial_cell_succeeds(self):
        spec = grid_spec(
            axis1={"name": "k", "values": [10]},
            axis2={"name": "n", "values": [2]},
            flow={"loss_threshold": 1e6},
        )
        result = run_grid(spec)
        cell = result.cells[0][0]
        assert result.complete
        assert cell.success_freq == 1.0
        assert cell.mean_steps_to_converge == 0.0
        assert len(cell.seeds) == spec.trials_per_cell

    def test_counts_and_shape(self):
        result = run_grid(grid_spec())
        assert len(result.cells) == 2 and len(result.cells[0]) == 2
        for row in result.cells:
            for cell in row:
                assert 0 <= cell.success_count <= cell.trials == 3

    def test_deterministic_across_thread_counts(self):
        spec = grid_spec()
        with WorkerPool(1) as pool:
            single = run_grid(spec, pool=pool)
        with WorkerPool(4) as pool:
            parallel = run_grid(spec, pool=pool)
        assert single.model_dump_json() == parallel.model_dump_json()

    def test_budget_refusal_reports_estimate(self):
        spec = grid_spec()
        with pytest.raises(BudgetExceededError) as exc:
            run_grid(spec, budget=1.0)
        assert exc.value.extra["estimate"] == pytest.approx(estimate_cost(spec))

    def test_estimate_cost_formula(self):
        spec = grid_spec(axis1={"name": "k", "values": [20]}, axis2={"name": "n", "values": [2]})
        # trials·max_steps·(k·d + n·k + m·n)
        assert estimate_cost(spec) == 3 * 50 * (20 * 3 + 2 * 20 + 2 * 2)

    def test_progress_and_checkpoint(self):
        seen, partials = [], []
        run_grid(
            grid_spec(),
            progress=lambda done, total, cell: seen.append((done, total)),
            checkpoint=partials.append,
        )
        assert [done for done, _ in seen] == [1, 2, 3, 4]
        assert all(total == 4 for _, total in seen)
        assert len(partials[0].missing_cells()) == 3
        assert not partials[-1].missing_cells()

    def test_resume_runs_only_missing_cells(self):
        spec = grid_spec()
        full = run_grid(spec)
        cells = [list(row) for row in full.cells]
        cells[1][0] = None
        partial = GridResult(spec=spec, cells=cells, complete=False)

        calls = []
        runner = GridRunner(spec, progress=lambda done, total, cell: calls.append(total))
        resumed = runner.run(partial)
        assert calls == [1]
        assert resumed.model_dump_json() == full.model_dump_json()

    def test_resume_rejects_other_spec(self):
        partial = run_grid(grid_spec())
        with pytest.raises(ResumeMismatchError):
            GridRunner(grid_spec(master_seed=6)).run(partial)

    def test_cancel_interrupts(self):
        cancel = threading.Event()
        cancel.set()
        with pytest.raises(KeyboardInterrupt):
            run_grid(grid_spec(), cancel=cancel)

    def test_custom_operator_rejected(self):
        with pytest.raises(ValidationError):
            GridRunner(grid_spec(fixed={"m": 2, "d": 3, "operator_kind": "custom"}))


class TestGridAnalysis:
    def make_result(self, freqs, trials=10):
        spec = grid_spec(
            axis1={"name": "k", "values": [10, 20, 30]},
            axis2={"name": "n", "values": [2]},
            trials_per_cell=trials,
        )
        cells = [
            [
                CellResult(
                    axis1_value=k,
                    axis2_value=2,
                    success_count=int(f * trials),
                    trials=trials,
                    mean_final_loss=0.0,
                    seeds=[],
                )
            ]
            for k, f in zip(spec.axis1.values, freqs)
        ]
        return GridResult(spec=spec, cells=cells, complete=True)

    def test_success_frequencies(self):
        freq = success_frequencies(self.make_result([0.0, 0.5, 1.0]))
        np.testing.assert_allclose(freq[:, 0], [0.0, 0.5, 1.0])

    def test_monotone_within_slack(self):
        assert monotonicity_violations(self.make_result([0.2, 0.6, 0.5])) == []

    def test_monotonicity_violation(self):
        assert monotonicity_violations(self.make_result([1.0, 0.0, 1.0])) == [(0, 0, 1)]

    def test_calibrate_c1_boundary(self):
        result = self.make_result([0.0, 0.6, 1.0])
        c1 = calibrate_c1(result)
        assert c1 > 0

    def test_calibrate_c1_without_success(self):
        with pytest.raises(InsufficientDataError):
            calibrate_c1(self.make_result([0.0, 0.0, 0.0]))


class TestDecayFit:
    def test_exact_exponential(self):
        fit = fit_decay_rate(exponential_trajectory(2.0))
        assert fit.rate_hat == pytest.approx(2.0, rel=1e-10)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
        assert fit.samples_used == 20

    def test_too_few_samples(self):
        with pytest.raises(InsufficientDataError):
            fit_decay_rate(exponential_trajectory(1.0, samples=5))

    def test_stops_at_numerical_floor(self):
        traj = exponential_trajectory(100.0, samples=40, eta=0.1)
        with pytest.raises(InsufficientDataError):
            fit_decay_rate(traj)

    def test_linear_eigen_oracle(self, linear):
        # m = 1: r_{t+1} = (1 − ηM) r_t, скорость −log(1 − ηM)/η
        net = init_network(5, 2, 3, linear, seed=1)
        prob = make_problem(1, 3, 0.0, seed=2)
        M = float(prob.A @ net.V @ net.V.T @ prob.A.T) / (prob.m * net.k)
        eta = 0.1 / M
        cfg = FlowConfig(step_size=eta, max_steps=100, loss_threshold=1e-30, record_every=5)
        fit = fit_decay_rate(run_flow(net, prob, cfg))
        assert fit.rate_hat == pytest.approx(-math.log(1 - eta * M) / eta, rel=1e-6)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-9)


class TestEarlyStopping:
    def test_noise_level_must_be_positive(self):
        params = ExperimentParams(m=1, n=2, k=10, d=3)
        with pytest.raises(ValidationError):
            early_stopping_experiment(params, 0.0, trials=2, seed=0)

    def test_premise_regime_records(self):
        params = ExperimentParams(m=1, n=2, k=20000, d=20, flow=FlowConfig(step_size=0.05))
        summary = early_stopping_experiment(params, 0.5, trials=3, seed=1)
        assert summary.trials == 3
        assert summary.premise_met + summary.premise_unmet == 3
        for record in summary.records:
            if record.condition_eq5:
                assert record.t_star >= 0.0
                assert record.passed == (record.residual_ybar_at_t_star <= 2 * record.noise_norm)
            else:
                assert record.t_star is None and record.passed is None

    def test_summary_counts_excluded_trials(self):
        params = ExperimentParams(m=5, n=10, k=50, d=5, flow=FlowConfig(step_size=0.5, max_steps=100))
        summary = early_stopping_experiment(params, 0.1, trials=4, seed=2)
        assert summary.premise_unmet == 4
        assert summary.fraction is None
        assert summary.parameters["noise_level"] == 0.1
