"""Compilers from polynomial systems to games, each with a replay witness."""

from .binary import BinaryLayout, binary_equations, encode_binary
from .chain import AffineScaling, ChainStep, Reg, build_chain_3p, chain_values, select_scalings
from .matching import EquationAssignment, MatchingError, assign_equations
from .pipeline import METHODS, encode
from .three_player import encode_three_player, three_player_equations
from .univariate import encode_univariate, univariate_equations
from .witness import (
    DomainError,
    EncodingWitness,
    Linear,
    RegValue,
    WitnessFormatError,
    XPow,
    check_samples,
    deserialize_witness,
    replay_witness,
    serialize_witness,
)

__all__ = [
    "AffineScaling",
    "BinaryLayout",
    "ChainStep",
    "DomainError",
    "EncodingWitness",
    "METHODS",
    "EquationAssignment",
    "Linear",
    "MatchingError",
    "Reg",
    "RegValue",
    "WitnessFormatError",
    "XPow",
    "assign_equations",
    "binary_equations",
    "build_chain_3p",
    "chain_values",
    "check_samples",
    "deserialize_witness",
    "encode",
    "encode_binary",
    "encode_three_player",
    "encode_univariate",
    "replay_witness",
    "select_scalings",
    "serialize_witness",
    "three_player_equations",
    "univariate_equations",
]
