"""
Problem module - линейная обратная задача и спектральные характеристики оператора
"""
from .factory import OPERATOR_KINDS, from_snapshot, make_problem, to_snapshot
from .operator import InverseProblem, SpectralSummary, range_basis, spectral_summary

__all__ = [
    "InverseProblem",
    "SpectralSummary",
    "OPERATOR_KINDS",
    "make_problem",
    "spectral_summary",
    "range_basis",
    "to_snapshot",
    "from_snapshot",
]
