"""Intelligent states of su(1,1), su(2) and their q-deformations."""
from .errors import ConvergenceError, DomainError
from .qnum import q_bracket, q_bracket_ratio
from .representation import RepresentationSpec, build_triple
from .states import ISParams, StateVector, solve_by_diagonalization, solve_closed_form, solve_recurrence, verify

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DomainError",
    "ISParams",
    "RepresentationSpec",
    "StateVector",
    "build_triple",
    "q_bracket",
    "q_bracket_ratio",
    "solve_by_diagonalization",
    "solve_closed_form",
    "solve_recurrence",
    "verify",
]
