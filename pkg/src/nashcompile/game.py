"""Finite normal-form games with exact rational payoff tensors.

Player ``i``'s payoffs are stored as an ``N``-dimensional object array of
``Fraction`` with shape ``strategy_counts``; in flattened (file) order the
last player's strategy index varies fastest.  Mixed profiles are either
exact (``Fraction`` entries) or float; every evaluation routine follows the
profile's mode.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

__all__ = [
    "Game",
    "MixedProfile",
    "ResidualReport",
    "GameFormatError",
    "expected_payoff",
    "pure_vs_profile_payoff",
    "indifference_residuals",
    "is_totally_mixed_equilibrium",
    "serialize_game",
    "deserialize_game",
    "serialize_profile",
    "deserialize_profile",
    "parse_number",
    "format_number",
]

DEFAULT_TOL = 1e-9


def _frac_array(values, shape) -> np.ndarray:
    arr = np.empty(int(np.prod(shape)), dtype=object)
    flat = list(values)
    if len(flat) != arr.size:
        raise ValueError(f"expected {arr.size} entries, got {len(flat)}")
    for k, v in enumerate(flat):
        arr[k] = Fraction(v)
    return arr.reshape(shape)


@dataclass(frozen=True, eq=False)
class Game:
    strategy_counts: tuple[int, ...]
    payoffs: tuple[np.ndarray, ...]

    def __post_init__(self):
        counts = tuple(int(k) for k in self.strategy_counts)
        if not counts:
            raise ValueError("a game needs at least one player")
        if any(k < 1 for k in counts):
            raise ValueError("every player needs at least one strategy")
        if len(self.payoffs) != len(counts):
            raise ValueError("one payoff tensor per player is required")
        tensors = []
        for arr in self.payoffs:
            arr = np.asarray(arr, dtype=object)
            if arr.size != math.prod(counts):
                raise ValueError(
                    f"payoff tensor has {arr.size} entries, expected {math.prod(counts)}"
                )
            arr = _frac_array(arr.ravel(), counts)
            arr.flags.writeable = False
            tensors.append(arr)
        object.__setattr__(self, "strategy_counts", counts)
        object.__setattr__(self, "payoffs", tuple(tensors))

    @property
    def num_players(self) -> int:
        return len(self.strategy_counts)

    @cached_property
    def float_payoffs(self) -> tuple[np.ndarray, ...]:
        return tuple(arr.astype(float) for arr in self.payoffs)

    def __eq__(self, other):
        if not isinstance(other, Game):
            return NotImplemented
        return self.strategy_counts == other.strategy_counts and all(
            np.array_equal(a, b) for a, b in zip(self.payoffs, other.payoffs)
        )

    def __repr__(self):
        return f"Game(strategy_counts={self.strategy_counts})"


@dataclass(frozen=True, eq=False)
class MixedProfile:
    """One probability vector per player.

    ``exact`` is true when every entry is a ``Fraction``; such profiles must
    sum to one exactly, float profiles within ``1e-12``.
    """

    vectors: tuple[np.ndarray, ...]
    exact: bool = field(default=None)

    def __post_init__(self):
        vecs = [list(v) for v in self.vectors]
        exact = all(isinstance(x, (int, Fraction)) for v in vecs for x in v)
        if self.exact is not None and self.exact and not exact:
            raise ValueError("exact profile contains non-rational entries")
        if self.exact is False:
            exact = False
        arrays = []
        for v in vecs:
            if not v:
                raise ValueError("empty probability vector")
            if exact:
                arr = np.array([Fraction(x) for x in v], dtype=object)
                if sum(arr) != 1:
                    raise ValueError(f"probabilities {v} do not sum to 1")
            else:
                arr = np.array([float(x) for x in v])
                if abs(arr.sum() - 1.0) > 1e-12:
                    raise ValueError(f"probabilities {v} do not sum to 1")
            if any(x < 0 or x > 1 for x in arr):
                raise ValueError(f"probabilities {v} leave [0, 1]")
            arr.flags.writeable = False
            arrays.append(arr)
        object.__setattr__(self, "vectors", tuple(arrays))
        object.__setattr__(self, "exact", exact)

    @classmethod
    def from_free(cls, free: Sequence[Sequence], exact: bool | None = None) -> "MixedProfile":
        """Build from the ``sigma_i^j`` (``j >= 1``) coordinates; ``sigma_i^0`` is the remainder."""
        return cls(tuple([1 - sum(v)] + list(v) for v in free), exact)

    @classmethod
    def uniform(cls, counts: Sequence[int]) -> "MixedProfile":
        return cls(tuple([Fraction(1, k)] * k for k in counts))

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(v) for v in self.vectors)

    def is_interior(self) -> bool:
        return all(all(row) for row in self.interior_flags())

    def interior_flags(self) -> tuple[tuple[bool, ...], ...]:
        """Per-probability flag ``0 < p < 1``; a lone strategy counts as interior."""
        return tuple(
            tuple(bool(0 < p < 1) or len(v) == 1 for p in v) for v in self.vectors
        )

    def __getitem__(self, i):
        return self.vectors[i]

    def __eq__(self, other):
        if not isinstance(other, MixedProfile):
            return NotImplemented
        return self.counts == other.counts and all(
            np.array_equal(a, b) for a, b in zip(self.vectors, other.vectors)
        )

    def __repr__(self):
        rows = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.vectors)
        return f"MixedProfile({rows})"


def _check_dims(game: Game, profile: MixedProfile):
    if profile.counts != game.strategy_counts:
        raise ValueError(
            f"profile shape {profile.counts} does not match game {game.strategy_counts}"
        )


def _tensor(game: Game, i: int, profile: MixedProfile) -> np.ndarray:
    return game.payoffs[i] if profile.exact else game.float_payoffs[i]


def _contract(tensor: np.ndarray, profile: MixedProfile, skip: int | None) -> np.ndarray:
    # highest axis first so the lower axis indices stay valid
    arr = tensor
    for k in reversed(range(tensor.ndim)):
        if k == skip:
            continue
        arr = np.tensordot(arr, profile.vectors[k], axes=([k], [0]))
    return arr


def expected_payoff(game: Game, i: int, profile: MixedProfile):
    _check_dims(game, profile)
    return _contract(_tensor(game, i, profile), profile, None)[()]


def pure_vs_profile_payoff(game: Game, i: int, j: int, profile: MixedProfile):
    """Expected payoff to player ``i`` for pure strategy ``j`` against ``profile``."""
    _check_dims(game, profile)
    if not 0 <= j < game.strategy_counts[i]:
        raise IndexError(f"player {i} has no strategy {j}")
    return _contract(_tensor(game, i, profile), profile, i)[j]


@dataclass(frozen=True)
class ResidualReport:
    """Indifference residuals ``u_i(s_ij, .) - u_i(s_i0, .)`` for ``j >= 1``.

    ``residuals[i]`` holds player ``i``'s ``d_i`` values.
    """

    residuals: tuple[tuple, ...]
    interior: tuple[tuple[bool, ...], ...]

    @property
    def max_abs(self):
        return max((abs(r) for row in self.residuals for r in row), default=0)

    @property
    def count(self) -> int:
        return sum(len(row) for row in self.residuals)

    @property
    def all_interior(self) -> bool:
        return all(all(row) for row in self.interior)

    def flat(self) -> list:
        return [r for row in self.residuals for r in row]


def indifference_residuals(game: Game, profile: MixedProfile) -> ResidualReport:
    _check_dims(game, profile)
    rows = []
    for i in range(game.num_players):
        pure = _contract(_tensor(game, i, profile), profile, i)
        rows.append(tuple(pure[j] - pure[0] for j in range(1, len(pure))))
    return ResidualReport(tuple(rows), profile.interior_flags())


def is_totally_mixed_equilibrium(game: Game, profile: MixedProfile, tol=0) -> bool:
    if profile.exact and tol != 0:
        raise ValueError("exact profiles are checked with tol = 0")
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    report = indifference_residuals(game, profile)
    return report.all_interior and report.max_abs <= tol


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------


class GameFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


_FLOAT_CHARS = re.compile(r"[.eE]|inf|nan", re.IGNORECASE)


def parse_number(token: str):
    """``p/q`` and integers become ``Fraction``; decimal notation becomes ``float``."""
    if _FLOAT_CHARS.search(token):
        return float(token)
    return Fraction(token)


def format_number(x) -> str:
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    return format(float(x), ".17g")


def serialize_game(game: Game) -> str:
    lines = [
        f"players: {game.num_players}",
        "strategies: " + " ".join(str(k) for k in game.strategy_counts),
    ]
    for i, arr in enumerate(game.payoffs, start=1):
        lines.append(f"payoffs {i}:")
        rows = arr.reshape(-1, game.strategy_counts[-1])
        lines.extend(" ".join(str(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def _header(lines, idx, key):
    while idx < len(lines) and not lines[idx][1].strip():
        idx += 1
    if idx >= len(lines):
        raise GameFormatError(f"missing '{key}:' line", len(lines) + 1)
    lineno, text = lines[idx]
    head, sep, rest = text.partition(":")
    if not sep or head.strip() != key:
        raise GameFormatError(f"expected '{key}:'", lineno)
    return idx + 1, lineno, rest.split()


def deserialize_game(text: str) -> Game:
    lines = [
        (k, ln) for k, ln in enumerate(text.splitlines(), start=1) if not ln.lstrip().startswith("#")
    ]
    idx, lineno, tokens = _header(lines, 0, "players")
    try:
        (n_players,) = [int(t) for t in tokens]
    except ValueError:
        raise GameFormatError("'players:' needs one integer", lineno) from None
    idx, lineno, tokens = _header(lines, idx, "strategies")
    try:
        counts = tuple(int(t) for t in tokens)
    except ValueError:
        raise GameFormatError("bad strategy count", lineno) from None
    if len(counts) != n_players or any(k < 1 for k in counts):
        raise GameFormatError("strategy counts do not match player count", lineno)
    size = math.prod(counts)
    tensors = []
    for i in range(1, n_players + 1):
        idx, lineno, tokens = _header(lines, idx, f"payoffs {i}")
        values = [(lineno, tok) for tok in tokens]
        while idx < len(lines) and ":" not in lines[idx][1]:
            values.extend((lines[idx][0], tok) for tok in lines[idx][1].split())
            idx += 1
        if len(values) != size:
            raise GameFormatError(
                f"player {i} has {len(values)} payoffs, expected {size}", lineno
            )
        parsed = []
        for ln, tok in values:
            try:
                parsed.append(Fraction(tok))
            except ValueError:
                raise GameFormatError(f"bad rational {tok!r}", ln) from None
        tensors.append(_frac_array(parsed, counts))
    rest = [ln for ln in lines[idx:] if ln[1].strip()]
    if rest:
        raise GameFormatError("trailing content", rest[0][0])
    return Game(counts, tuple(tensors))


def serialize_profile(profile: MixedProfile) -> str:
    lines = [f"players: {len(profile.vectors)}"]
    for i, v in enumerate(profile.vectors, start=1):
        lines.append(f"player {i}: " + " ".join(format_number(x) for x in v))
    return "\n".join(lines) + "\n"


def deserialize_profile(text: str) -> MixedProfile:
    lines = [(k, ln) for k, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    idx, lineno, tokens = _header(lines, 0, "players")
    count = int(tokens[0])
    vectors = []
    for i in range(1, count + 1):
        idx, lineno, tokens = _header(lines, idx, f"player {i}")
        try:
            vectors.append([parse_number(t) for t in tokens])
        except ValueError:
            raise GameFormatError("bad probability", lineno) from None
    return MixedProfile(tuple(vectors))
