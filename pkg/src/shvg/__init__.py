"""Solvers for the Maker-Breaker scoring happy vertex game."""
from .closed_form import classify, formula_score
from .errors import ResourceExceeded
from .fpt import nd_solve
from .graph import BREAKER, MAKER, Graph, ParseError, Player, Position, happy_count
from .milnor import ScorePair, sum_bounds
from .oracle import brute_force_score
from .solver import SolveConfig, Solver, best_move, solve, solve_pair

__version__ = "0.1.0"

__all__ = [
    "Graph", "Position", "Player", "MAKER", "BREAKER", "ParseError", "ResourceExceeded",
    "happy_count", "brute_force_score", "SolveConfig", "Solver", "solve", "solve_pair",
    "best_move", "ScorePair", "sum_bounds", "classify", "formula_score", "nd_solve",
]
