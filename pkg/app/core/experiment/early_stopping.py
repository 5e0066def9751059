# app/core/experiment/early_stopping.py
import logging
from typing import Optional

from app.core.activation import get_activation
from app.core.exceptions import ValidationError
from app.core.flow import early_stopping_time, run_flow_until
from app.core.model import init_network
from app.core.problem import make_problem
from app.core.theory import build_report
from app.schemas import EarlyStoppingSummary, EarlyStoppingTrial, ExperimentParams, FlowOutcome
from app.utils.seeding import derive_seed
from app.workers.pool import WorkerPool, run_ordered

from .grid import NETWORK_STREAM, PROBLEM_STREAM

logger = logging.getLogger(__name__)

NOISE_FACTOR = 2.0


def early_stopping_experiment(
    params: ExperimentParams,
    noise_level: float,
    trials: int,
    seed: int,
    pool: Optional[WorkerPool] = None,
) -> EarlyStoppingSummary:
    """
    Проверка ‖y(t*) − ȳ‖ ≤ 2‖ε‖ в момент ранней остановки t*

    Испытания, где условие на начальную невязку не выполнено, исключаются
    и считаются отдельно.
    """
    if noise_level <= 0:
        raise ValidationError("noise_level must be positive", field="noise_level")
    if trials < 1:
        raise ValidationError(f"trials must be >= 1, got {trials}", field="trials")
    activation = get_activation(params.activation)

    def trial(index: int) -> EarlyStoppingTrial:
        base = derive_seed(seed, index)
        prob = make_problem(
            params.m,
            params.n,
            noise_level,
            derive_seed(base, PROBLEM_STREAM),
            operator_kind=params.operator_kind,
            signal_scale=params.signal_scale,
        )
        net = init_network(
            params.k,
            params.d,
            params.n,
            activation,
            derive_seed(base, NETWORK_STREAM),
            params.v_distribution,
        )
        report = build_report(net, prob)
        if not report.condition_eq5:
            return EarlyStoppingTrial(
                trial=index,
                seed=base,
                condition_eq5=False,
                noise_norm=prob.noise_norm,
            )

        t_star = early_stopping_time(report, report.init_residual, prob.noise_norm)
        trajectory = run_flow_until(net, prob, params.flow, t_star)
        residual_ybar = trajectory.final.residual_ybar
        passed = (
            trajectory.outcome != FlowOutcome.DIVERGED
            and residual_ybar <= NOISE_FACTOR * prob.noise_norm
        )
        return EarlyStoppingTrial(
            trial=index,
            seed=base,
            condition_eq5=True,
            t_star=t_star,
            noise_norm=prob.noise_norm,
            residual_ybar_at_t_star=residual_ybar,
            passed=passed,
        )

    records = run_ordered(trial, range(trials), pool)
    met = [r for r in records if r.condition_eq5]
    successes = sum(1 for r in met if r.passed)
    fraction = successes / len(met) if met else None
    if not met:
        logger.warning("⚠️ Early stopping: no trial satisfied the overparametrization condition")
    else:
        logger.info(
            f"✅ Early stopping: {successes}/{len(met)} premise trials within "
            f"{NOISE_FACTOR}·‖ε‖ ({len(records) - len(met)} excluded)"
        )
    return EarlyStoppingSummary(
        trials=trials,
        premise_met=len(met),
        premise_unmet=len(records) - len(met),
        successes=successes,
        fraction=fraction,
        records=records,
        parameters={
            **params.model_dump(mode="json"),
            "noise_level": noise_level,
            "seed": seed,
        },
    )
