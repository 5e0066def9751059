# app/core/theory/probes.py
import logging
import math
from typing import Callable, List, Optional, Sequence

import numpy as np

from app.core.activation import ActivationSpec
from app.core.exceptions import ValidationError
from app.core.flow.loss import residual
from app.core.model import init_network, jacobian_difference_norm, sigma_min_jacobian
from app.core.problem import InverseProblem
from app.schemas import ProbeSummary
from app.utils.seeding import derive_seed
from app.workers.pool import WorkerPool, run_ordered

from .bounds import init_error_bound, lip_jacobian_bound

logger = logging.getLogger(__name__)

MIN_TRIALS = 10
LIPSCHITZ_TOL = 1e-10

# Потоки seed: сеть и задача одного испытания независимы
NETWORK_STREAM = 0
PROBLEM_STREAM = 1
PAIR_STREAM = 2


def _check_trials(trials: int):
    if trials < MIN_TRIALS:
        raise ValidationError(
            f"Probe requires at least {MIN_TRIALS} trials, got {trials}", field="trials"
        )


def _summarize(
    name: str,
    values: Sequence[float],
    hits: Sequence[bool],
    threshold: Optional[float],
    criterion: str,
    passed: bool,
    **details,
) -> ProbeSummary:
    arr = np.asarray(values, dtype=float)
    return ProbeSummary(
        name=name,
        trials=len(values),
        fraction=float(np.mean(hits)),
        min=float(np.min(arr)),
        median=float(np.median(arr)),
        max=float(np.max(arr)),
        threshold=threshold,
        criterion=criterion,
        passed=passed,
        details=details,
    )


def probe_sigma_min_concentration(
    k: int,
    d: int,
    n: int,
    activation: ActivationSpec,
    trials: int,
    seed: int,
    v_distribution: str = "rademacher",
    min_fraction: Optional[float] = None,
    pool: Optional[WorkerPool] = None,
) -> ProbeSummary:
    """
    Доля свежих инициализаций с σ_min(J(θ₀)) ≥ C_φ′/2

    Args:
        min_fraction: порог прохождения; по умолчанию 1 − 2/n

    Returns:
        ProbeSummary по значениям σ_min(J(θ₀))
    """
    _check_trials(trials)
    threshold = activation.C_phi_prime / 2.0
    required = max(0.0, 1.0 - 2.0 / n) if min_fraction is None else min_fraction

    def trial(index: int) -> float:
        net = init_network(
            k, d, n, activation, derive_seed(seed, NETWORK_STREAM, index), v_distribution
        )
        return sigma_min_jacobian(net)

    sigmas: List[float] = run_ordered(trial, range(trials), pool)
    hits = [s >= threshold for s in sigmas]
    fraction = float(np.mean(hits))
    logger.info(
        f"Sigma_min probe (k={k}, d={d}, n={n}): {fraction:.3f} of {trials} "
        f"trials reach {threshold:.4g}"
    )
    return _summarize(
        "sigma_min_concentration",
        sigmas,
        hits,
        threshold,
        f"fraction >= {required:.4g}",
        fraction >= required,
        k=k,
        d=d,
        n=n,
        activation=activation.name,
        v_distribution=v_distribution,
    )


def probe_init_error(
    k: int,
    d: int,
    n: int,
    m: int,
    activation: ActivationSpec,
    problem_factory: Callable[[int], InverseProblem],
    trials: int,
    seed: int,
    v_distribution: str = "rademacher",
    min_fraction: Optional[float] = None,
    pool: Optional[WorkerPool] = None,
) -> ProbeSummary:
    """
    Доля испытаний с ‖y(0) − y‖ в пределах границы начальной ошибки

    Граница считается для каждого испытания по его A, x̄ и ε.
    problem_factory получает seed задачи и возвращает задачу размера m×n.

    Returns:
        ProbeSummary по отношениям ‖y(0) − y‖ / граница
    """
    _check_trials(trials)
    required = max(0.0, 1.0 - 2.0 / d) if min_fraction is None else min_fraction

    def trial(index: int) -> float:
        prob = problem_factory(derive_seed(seed, PROBLEM_STREAM, index))
        if prob.m != m or prob.n != n:
            raise ValidationError(
                f"Problem factory returned {prob.m}x{prob.n}, expected {m}x{n}",
                field="problem_factory",
            )
        net = init_network(
            k, d, n, activation, derive_seed(seed, NETWORK_STREAM, index), v_distribution
        )
        r0 = float(np.linalg.norm(residual(net, prob)))
        bound = init_error_bound(prob, activation, net.D, d)
        if bound == 0.0:
            return 0.0 if r0 == 0.0 else math.inf
        return r0 / bound

    ratios: List[float] = run_ordered(trial, range(trials), pool)
    hits = [r <= 1.0 for r in ratios]
    fraction = float(np.mean(hits))
    logger.info(
        f"Initial error probe (k={k}, d={d}, n={n}, m={m}): {fraction:.3f} of {trials} "
        f"trials within bound"
    )
    return _summarize(
        "init_error",
        ratios,
        hits,
        1.0,
        f"fraction >= {required:.4g}",
        fraction >= required,
        k=k,
        d=d,
        n=n,
        m=m,
        activation=activation.name,
        v_distribution=v_distribution,
    )


def probe_lipschitz(
    k: int,
    d: int,
    n: int,
    activation: ActivationSpec,
    pairs: int,
    seed: int,
    v_distribution: str = "rademacher",
    pool: Optional[WorkerPool] = None,
) -> ProbeSummary:
    """
    Отношения ‖J(W) − J(W̃)‖ / ‖W − W̃‖_F на случайных парах

    Каждая пара использует свои u и V; расстояния между W и W̃ берутся
    в масштабах от 1e-3 до 10. Проверка проходит, если максимум отношения
    не превышает BD√(n/k).
    """
    if pairs < 1:
        raise ValidationError(f"pairs must be >= 1, got {pairs}", field="pairs")

    def trial(index: int) -> float:
        pair_seed = derive_seed(seed, PAIR_STREAM, index)
        net = init_network(k, d, n, activation, pair_seed, v_distribution)
        rng = np.random.default_rng(derive_seed(pair_seed, PAIR_STREAM))
        W = rng.standard_normal((k, d))
        scale = 10.0 ** rng.uniform(-3.0, 1.0)
        W_tilde = W + scale * rng.standard_normal((k, d))
        distance = float(np.linalg.norm(W - W_tilde))
        return jacobian_difference_norm(net, W, W_tilde) / distance

    ratios: List[float] = run_ordered(trial, range(pairs), pool)
    # B, D, n и k одинаковы для всех пар
    bound = lip_jacobian_bound(
        init_network(k, d, n, activation, derive_seed(seed, PAIR_STREAM, 0), v_distribution)
    )
    hits = [r <= bound + LIPSCHITZ_TOL for r in ratios]
    passed = all(hits)
    if not passed:
        logger.warning(f"⚠️ Lipschitz probe exceeded bound {bound:.4g}: max {max(ratios):.4g}")
    return _summarize(
        "jacobian_lipschitz",
        ratios,
        hits,
        bound,
        f"max ratio <= {bound:.4g}",
        passed,
        k=k,
        d=d,
        n=n,
        activation=activation.name,
        v_distribution=v_distribution,
    )
