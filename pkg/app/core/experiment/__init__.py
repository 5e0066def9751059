"""
Experiment module - сетки фазовых переходов, подгонка спада, ранняя остановка
"""
from .calibration import calibrate_c1
from .decay import fit_decay_rate, numerical_floor
from .early_stopping import early_stopping_experiment
from .grid import (
    GridRunner,
    aggregate_cell,
    estimate_cost,
    monotonicity_violations,
    run_grid,
    success_frequencies,
    trial_seeds,
)

__all__ = [
    "GridRunner",
    "run_grid",
    "estimate_cost",
    "aggregate_cell",
    "trial_seeds",
    "success_frequencies",
    "monotonicity_violations",
    "fit_decay_rate",
    "numerical_floor",
    "early_stopping_experiment",
    "calibrate_c1",
]
