"""Compile real algebraic varieties into games whose totally mixed Nash
equilibria reproduce them, and check the result exactly."""

from .game import Game, MixedProfile, indifference_residuals, is_totally_mixed_equilibrium
from .polysys import PolySystem, Polynomial, degree_profile, parse_system
from .synth import EquationSystem, synthesize_game

__version__ = "0.1.0"

__all__ = [
    "EquationSystem",
    "Game",
    "MixedProfile",
    "PolySystem",
    "Polynomial",
    "degree_profile",
    "indifference_residuals",
    "is_totally_mixed_equilibrium",
    "parse_system",
    "synthesize_game",
]
