# app/core/flow/service.py
import logging
import math
import time
from typing import List, Optional

import numpy as np

from app.core.flow.loss import residual_and_gradient
from app.core.model import DipNetwork, sigma_min_jacobian
from app.core.problem import InverseProblem
from app.schemas import FlowConfig, FlowOutcome, Trajectory, TrajectorySample

logger = logging.getLogger(__name__)


class FlowIntegrator:
    """
    Явная схема Эйлера для градиентного потока по W

    Мутирует net.W; траектория записывается на шаге 0, каждые
    record_every шагов и на последнем шаге.
    """

    def __init__(self, net: DipNetwork, prob: InverseProblem, cfg: FlowConfig):
        self.net = net
        self.prob = prob
        self.cfg = cfg
        self._W_start = net.W.copy()
        self._samples: List[TrajectorySample] = []

    def _record(self, step: int, r: np.ndarray, loss_value: float):
        finite = np.isfinite(r).all()
        residual_y = float(np.linalg.norm(r)) if finite else math.inf
        residual_ybar = float(np.linalg.norm(r + self.prob.eps)) if finite else math.inf
        drift = float(np.linalg.norm(self.net.W - self._W_start))
        sigma_min = None
        if self.cfg.track_sigma_min and finite and np.isfinite(self.net.W).all():
            sigma_min = sigma_min_jacobian(self.net)
        self._samples.append(
            TrajectorySample(
                step=step,
                time=step * self.cfg.step_size,
                loss=loss_value,
                residual_y=residual_y,
                residual_ybar=residual_ybar,
                param_drift=drift if math.isfinite(drift) else math.inf,
                sigma_min_J=sigma_min,
            )
        )

    def integrate(self, max_steps: int, threshold: Optional[float]) -> Trajectory:
        """
        Выполнить не более max_steps шагов

        Args:
            max_steps: предел числа шагов (0: только начальная точка)
            threshold: порог функции потерь; None: без остановки по потерям
        """
        eta = self.cfg.step_size
        m = self.prob.m
        started = time.perf_counter()

        r, grad = residual_and_gradient(self.net, self.prob)
        loss_value = float(r @ r) / (2.0 * m)
        self._record(0, r, loss_value)

        if not math.isfinite(loss_value):
            return self._finish(FlowOutcome.DIVERGED, started)
        if threshold is not None and loss_value <= threshold:
            return self._finish(FlowOutcome.CONVERGED, started)

        outcome = FlowOutcome.STEP_CAP
        for step in range(1, max_steps + 1):
            self.net.W -= eta * grad
            r, grad = residual_and_gradient(self.net, self.prob)
            loss_value = float(r @ r) / (2.0 * m)

            if not math.isfinite(loss_value):
                outcome = FlowOutcome.DIVERGED
                self._record(step, r, loss_value)
                break
            if threshold is not None and loss_value <= threshold:
                outcome = FlowOutcome.CONVERGED
                self._record(step, r, loss_value)
                break
            if step % self.cfg.record_every == 0 or step == max_steps:
                self._record(step, r, loss_value)

        return self._finish(outcome, started)

    def _finish(self, outcome: FlowOutcome, started: float) -> Trajectory:
        trajectory = Trajectory(
            samples=self._samples,
            outcome=outcome,
            step_size=self.cfg.step_size,
        )
        logger.debug(
            f"Flow finished: outcome={outcome.value}, steps={trajectory.steps_taken}, "
            f"loss={trajectory.final.loss:.3e}, elapsed={time.perf_counter() - started:.2f}s"
        )
        return trajectory


def run_flow(net: DipNetwork, prob: InverseProblem, cfg: FlowConfig) -> Trajectory:
    """
    Градиентный спуск W ← W − η∇L до порога потерь, предела шагов или расходимости

    Расходимость считается исходом траектории, а не исключением.
    """
    return FlowIntegrator(net, prob, cfg).integrate(cfg.max_steps, cfg.loss_threshold)


def run_flow_until(
    net: DipNetwork, prob: InverseProblem, cfg: FlowConfig, t_stop: float
) -> Trajectory:
    """Ровно ⌈t_stop/η⌉ шагов без остановки по потерям (для ранней остановки)"""
    if t_stop < 0 or not math.isfinite(t_stop):
        raise ValueError(f"t_stop must be finite and nonnegative, got {t_stop}")
    steps = math.ceil(t_stop / cfg.step_size - 1e-12) if t_stop > 0 else 0
    return FlowIntegrator(net, prob, cfg).integrate(max(steps, 0), threshold=None)
