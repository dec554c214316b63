"""Payoff synthesis: realise prescribed multilinear indifference equations.

Player ``i``'s ``j``-th indifference equation is a multilinear polynomial in
the other players' coordinates ``sigma_k^{t}`` (``t >= 1``), with the
convention ``sigma_k^0 = 1``.  Setting ``u_i(s_i0, .) = 0`` and homogenising
``1 = sum_t sigma_k(s_kt)`` gives the payoff rule

    u_i(s_ij, t_{-i}) = sum over J <= t_{-i} of lambda_J,

where ``J <= t`` means each ``J_k`` is ``0`` or ``t_k``.  Along one axis that
is ``u[0] = lam[0]`` and ``u[t] = lam[0] + lam[t]``, so the whole map is a
product of one-axis transforms and the inverse subtracts the ``0`` slice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .game import Game, MixedProfile
from .polysys import Polynomial

__all__ = [
    "MultilinearEquation",
    "EquationSystem",
    "payoffs_from_equations",
    "equations_from_payoffs",
    "evaluate_equation",
    "synthesize_game",
]


def _zeros(shape) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr.fill(Fraction(0))
    return arr


@dataclass(frozen=True, eq=False)
class MultilinearEquation:
    """Coefficients ``lambda`` of one indifference equation of ``owner``.

    ``coeffs`` has one axis per *other* player (in player order) of length
    ``strategy_counts[k]``; entry ``J`` multiplies ``prod_k sigma_k^{J_k}``.
    ``index`` runs over ``1..d_owner``.
    """

    owner: int
    index: int
    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=object)
        out = _zeros(arr.shape)
        for pos in np.ndindex(arr.shape):
            out[pos] = Fraction(arr[pos])
        object.__setattr__(self, "coeffs", out)

    @classmethod
    def zero(cls, owner: int, index: int, counts: Sequence[int]) -> "MultilinearEquation":
        shape = tuple(k for p, k in enumerate(counts) if p != owner)
        return cls(owner, index, _zeros(shape))

    def __eq__(self, other):
        if not isinstance(other, MultilinearEquation):
            return NotImplemented
        return (
            self.owner == other.owner
            and self.index == other.index
            and self.coeffs.shape == other.coeffs.shape
            and bool(np.all(self.coeffs == other.coeffs))
        )

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs.flat)


def _zeta(arr: np.ndarray) -> np.ndarray:
    out = arr.copy()
    for axis in range(out.ndim):
        head = np.take(out, [0], axis=axis)
        idx = [slice(None)] * out.ndim
        idx[axis] = slice(1, None)
        out[tuple(idx)] = out[tuple(idx)] + head
    return out


def _mobius(arr: np.ndarray) -> np.ndarray:
    out = arr.copy()
    for axis in range(out.ndim):
        head = np.take(out, [0], axis=axis)
        idx = [slice(None)] * out.ndim
        idx[axis] = slice(1, None)
        out[tuple(idx)] = out[tuple(idx)] - head
    return out


def payoffs_from_equations(
    i: int, eqs: Sequence[MultilinearEquation], counts: Sequence[int]
) -> np.ndarray:
    """Payoff tensor of player ``i`` whose indifference equations are ``eqs``."""
    counts = tuple(counts)
    d_i = counts[i] - 1
    others = tuple(k for p, k in enumerate(counts) if p != i)
    if len(eqs) != d_i:
        raise ValueError(f"player {i} needs {d_i} equations, got {len(eqs)}")
    if sorted(e.index for e in eqs) != list(range(1, d_i + 1)):
        raise ValueError("equation indices must be 1..d_i, each once")
    tensor = _zeros(counts)
    for eq in eqs:
        if eq.owner != i:
            raise ValueError(f"equation owned by {eq.owner}, expected {i}")
        if eq.coeffs.shape != others:
            raise ValueError(f"coefficient shape {eq.coeffs.shape} != {others}")
        block = _zeta(eq.coeffs)
        idx = [slice(None)] * len(counts)
        idx[i] = eq.index
        tensor[tuple(idx)] = block
    return tensor


def equations_from_payoffs(game: Game, i: int) -> list[MultilinearEquation]:
    """Inverse transform: the indifference equations encoded by ``game`` for ``i``."""
    u = game.payoffs[i]
    base = np.take(u, 0, axis=i)
    return [
        MultilinearEquation(i, j, _mobius(np.take(u, j, axis=i) - base))
        for j in range(1, game.strategy_counts[i])
    ]


def evaluate_equation(eq: MultilinearEquation, profile: MixedProfile):
    """Left-hand side of the equation at ``profile`` (``sigma^0 = 1``)."""
    vecs = [v for p, v in enumerate(profile.vectors) if p != eq.owner]
    one = Fraction(1) if profile.exact else 1.0
    total = Fraction(0) if profile.exact else 0.0
    for pos in np.ndindex(eq.coeffs.shape):
        c = eq.coeffs[pos]
        if c == 0:
            continue
        term = c if profile.exact else float(c)
        for v, t in zip(vecs, pos):
            term = term * (v[t] if t else one)
        total = total + term
    return total


# ---------------------------------------------------------------------------
# equation systems written as polynomials in the flattened coordinates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EquationSystem:
    """Indifference equations of every player, as polynomials.

    Coordinates are flattened player by player: player ``k``'s variables
    ``sigma_k^1 .. sigma_k^{d_k}`` sit at ``offset(k) .. offset(k)+d_k-1``.
    ``equations[k]`` lists player ``k``'s ``d_k`` polynomials, read as
    ``poly = 0``.
    """

    strategy_counts: tuple[int, ...]
    equations: tuple[tuple[Polynomial, ...], ...]
    labels: tuple[tuple[str, ...], ...] | None = None

    def __post_init__(self):
        counts = tuple(self.strategy_counts)
        object.__setattr__(self, "strategy_counts", counts)
        eqs = tuple(tuple(row) for row in self.equations)
        object.__setattr__(self, "equations", eqs)
        if len(eqs) != len(counts):
            raise ValueError("one equation list per player")
        nvars = self.num_vars
        for k, row in enumerate(eqs):
            if len(row) != counts[k] - 1:
                raise ValueError(f"player {k} needs {counts[k] - 1} equations, got {len(row)}")
            for poly in row:
                if poly.n != nvars:
                    raise ValueError("equation ring does not match coordinates")

    @property
    def num_vars(self) -> int:
        return sum(k - 1 for k in self.strategy_counts)

    def offset(self, player: int) -> int:
        return sum(k - 1 for k in self.strategy_counts[:player])

    def var(self, player: int, j: int) -> int:
        """Flat index of ``sigma_player^j`` (``j >= 1``)."""
        if not 1 <= j < self.strategy_counts[player]:
            raise IndexError(f"player {player} has no coordinate {j}")
        return self.offset(player) + j - 1

    def owner_of(self, var: int) -> tuple[int, int]:
        for k, count in enumerate(self.strategy_counts):
            off = self.offset(k)
            if off <= var < off + count - 1:
                return k, var - off + 1
        raise IndexError(var)

    def to_multilinear(self, player: int) -> list[MultilinearEquation]:
        """Read off ``lambda`` coefficients; rejects non-multilinear terms."""
        counts = self.strategy_counts
        others = [k for k in range(len(counts)) if k != player]
        shape = tuple(counts[k] for k in others)
        out = []
        for j, poly in enumerate(self.equations[player], start=1):
            coeffs = _zeros(shape)
            for mono, c in poly.terms.items():
                index = [0] * len(others)
                for var, e in enumerate(mono):
                    if not e:
                        continue
                    k, t = self.owner_of(var)
                    if k == player:
                        raise ValueError(
                            f"equation {j} of player {player} uses the player's own coordinate"
                        )
                    pos = others.index(k)
                    if e > 1 or index[pos]:
                        raise ValueError(
                            f"equation {j} of player {player} is not multilinear in player {k}"
                        )
                    index[pos] = t
                coeffs[tuple(index)] += c
            out.append(MultilinearEquation(player, j, coeffs))
        return out

    def evaluate(self, profile: MixedProfile) -> list[list]:
        point = [x for v in profile.vectors for x in v[1:]]
        return [[poly(*point) for poly in row] for row in self.equations]

    def participants(self, player: int, j: int) -> set[int]:
        """Players whose coordinates occur in equation ``j`` of ``player``."""
        return {self.owner_of(v)[0] for v in self.equations[player][j - 1].variables()}


def synthesize_game(system: EquationSystem) -> Game:
    counts = system.strategy_counts
    tensors = [
        payoffs_from_equations(k, system.to_multilinear(k), counts) for k in range(len(counts))
    ]
    return Game(counts, tuple(tensors))


def random_equation(rng, owner: int, index: int, counts: Sequence[int], span: int = 5):
    """Random small-rational equation, for tests and demos."""
    shape = tuple(k for p, k in enumerate(counts) if p != owner)
    size = math.prod(shape)
    vals = [Fraction(rng.randint(-span, span), rng.randint(1, span)) for _ in range(size)]
    return MultilinearEquation(owner, index, np.array(vals, dtype=object).reshape(shape))

