"""
Theory module - величины теоремы сходимости, оценки ширины и проверки лемм
"""
from .bounds import (
    chernoff_required_k,
    init_error_bound,
    lip_jacobian_bound,
    lipschitz_bound,
    theorem2_time,
    theorem2_width,
    width_factor,
)
from .probes import probe_init_error, probe_lipschitz, probe_sigma_min_concentration
from .report import assemble_report, build_report

__all__ = [
    "lipschitz_bound",
    "lip_jacobian_bound",
    "chernoff_required_k",
    "theorem2_width",
    "init_error_bound",
    "theorem2_time",
    "width_factor",
    "assemble_report",
    "build_report",
    "probe_sigma_min_concentration",
    "probe_init_error",
    "probe_lipschitz",
]
