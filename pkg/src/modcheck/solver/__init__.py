"""Grounding to CNF and the embedded SAT engine."""

from .cardinality import CnfBuilder
from .cdcl import SolveOutcome, SolverAborted, solve_cnf
from .dimacs import DimacsError, export_dimacs, parse_dimacs
from .grounding import (
    Atom,
    Bounds,
    GroundingError,
    GroundingTooLarge,
    PropositionalProblem,
    bounds_for,
    decode,
    ground,
    minimize,
    pattern_mapping,
    solve,
)

__all__ = [
    "Atom", "Bounds", "CnfBuilder", "DimacsError", "GroundingError", "GroundingTooLarge",
    "PropositionalProblem", "SolveOutcome", "SolverAborted", "bounds_for", "decode",
    "export_dimacs", "ground", "minimize", "parse_dimacs", "pattern_mapping", "solve", "solve_cnf",
]
