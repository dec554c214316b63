"""One entry point over the three encoders, with optional normalisation."""

from __future__ import annotations

import dataclasses
from typing import Sequence

from ..game import Game
from ..normalize import normalize_to_box
from ..polysys import PolySystem, univariate_coefficients
from .binary import encode_binary
from .three_player import encode_three_player
from .univariate import encode_univariate
from .witness import EncodingWitness, check_samples

__all__ = ["METHODS", "encode"]

METHODS = ("3p", "np", "1d")


def encode(
    method: str,
    sys: PolySystem,
    *,
    normalize: bool = False,
    reduce_players: bool = False,
    sample_points: Sequence[Sequence] | None = None,
) -> tuple[Game, EncodingWitness]:
    """Compile ``sys`` with ``method``.

    With ``normalize`` the system is first moved into the open box and the
    witness keeps the coordinate change, so it still replays original points.
    ``sample_points`` (original coordinates) are checked against the domain.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    cmap = None
    if normalize:
        sys, cmap = normalize_to_box(sys)
    if method == "3p":
        game, witness = encode_three_player(sys)
    elif method == "np":
        game, witness = encode_binary(sys, reduce_players)
    else:
        if sys.n != 1 or sys.m != 1:
            raise ValueError("method 1d needs one equation in one unknown")
        game, witness = encode_univariate(univariate_coefficients(sys[0]))
    if cmap is not None:
        witness = dataclasses.replace(witness, normalization=cmap)
    check_samples(witness, sample_points)
    return game, witness
