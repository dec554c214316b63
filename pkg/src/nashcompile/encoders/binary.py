"""Encoding with many players of two strategies each.

Every binary player holds one number ``p`` (the probability of strategy 1).
Base players ``p_i`` carry the coordinates ``x_i``; chain players ``p_ik``
carry the powers ``x_i^k`` through ``p_i1 = p_i`` and ``p_ik = p_i p_i(k-1)``.
The system's equations, with powers replaced by chain players, go to the base
players, and the chain equations are matched to chain players so that no
player ever sees its own variable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from ..game import Game
from ..polysys import PolySystem, Polynomial, degree_profile
from ..synth import EquationSystem, synthesize_game
from .matching import assign_equations
from .witness import EncodingWitness, XPow, check_samples

__all__ = ["binary_equations", "encode_binary", "BinaryLayout"]

HALF = Fraction(1, 2)


class BinaryLayout:
    """Player numbering: base players, then chain players, then extra players."""

    def __init__(self, num_base: int, chain_lengths: Sequence[int], num_extra: int = 0):
        self.num_base = num_base
        self.chain_lengths = tuple(chain_lengths)
        self.num_extra = num_extra
        self.names = [f"p{i + 1}" for i in range(num_base)]
        self._chain_index: dict[tuple[int, int], int] = {}
        for i, length in enumerate(self.chain_lengths):
            for k in range(1, length + 1):
                self._chain_index[(i, k)] = len(self.names)
                self.names.append(f"p{i + 1}_{k}")
        self.extra_start = len(self.names)
        self.names += [f"q{j + 1}" for j in range(num_extra)]

    @property
    def num_players(self) -> int:
        return len(self.names)

    def chain(self, i: int, k: int) -> int:
        return self._chain_index[(i, k)]

    def chain_players(self) -> list[tuple[int, int]]:
        return list(self._chain_index)

    def var(self, player: int) -> Polynomial:
        return Polynomial.variable(self.num_players, player)

    def zero(self) -> Polynomial:
        return Polynomial(self.num_players)


def _substitute(poly: Polynomial, power: Callable[[int, int], Polynomial], nvars: int) -> Polynomial:
    """Replace every ``x_i^e`` (``e >= 1``) by ``power(i, e)``."""
    out = Polynomial(nvars)
    for mono, coef in poly.terms.items():
        term = Polynomial.constant(nvars, coef)
        for i, e in enumerate(mono):
            if e:
                term = term * power(i, e)
        out = out + term
    return out


def binary_equations(
    sys: PolySystem, reduce_players: bool = False
) -> tuple[EquationSystem, EncodingWitness, list[str]]:
    """Per-player equations, the witness, and player names.

    Without reduction the game has ``D' + max(m, n)`` players.  With
    ``reduce_players`` and ``n > m`` the chains are one step shorter, the
    substituted equations may mention base players, and ``m`` extra players
    (pinned at 1/2) take them over: ``D' + m`` players.
    """
    n, m = sys.n, sys.m
    if any(p.is_constant() for p in sys):
        raise ValueError("constant equation in system; nothing to encode")
    d = degree_profile(sys).var_max
    dprime = sum(d)
    if reduce_players and n > m:
        return _reduced(sys, d)

    M = max(m, n)
    lay = BinaryLayout(M, d)
    N = lay.num_players
    p = lay.var
    eqs: list[Polynomial] = [lay.zero()] * N
    sources = [((i, 1), XPow(i)) for i in range(n)]
    fixed = []
    free = [(i, 1) for i in range(n, M)]

    def by_chain(i, e):
        return p(lay.chain(i, e))

    if dprime == 1:
        (i0,) = [i for i in range(n) if d[i]]
        ch = lay.chain(i0, 1)
        eqs[i0] = p(ch) - HALF
        eqs[ch] = _substitute(sys[0], lambda i, e: p(i0), N)
        others = [j for j in range(M) if j != i0]
        for slot, poly in zip(others, sys.polys[1:]):
            eqs[slot] = _substitute(poly, lambda i, e: p(i0), N)
        fixed.append(((ch, 1), HALF))
        return _finish(lay, eqs, sources, fixed, free, n)

    if dprime == 2 and max(d) == 2:
        (i0,) = [i for i in range(n) if d[i]]
        c1, c2 = lay.chain(i0, 1), lay.chain(i0, 2)
        first = {1: p(c1), 2: p(c1) * p(c2)}
        rest = {1: p(i0), 2: p(i0) * p(c1)}
        eqs[i0] = _substitute(sys[0], lambda i, e: first[e], N)
        others = [j for j in range(M) if j != i0]
        for slot, poly in zip(others, sys.polys[1:]):
            eqs[slot] = _substitute(poly, lambda i, e: rest[e], N)
        eqs[c1] = p(c2) - p(i0)
        eqs[c2] = p(c1) - p(i0)
        sources += [((c1, 1), XPow(i0)), ((c2, 1), XPow(i0))]
        return _finish(lay, eqs, sources, fixed, free, n)

    for j, poly in enumerate(sys):
        eqs[j] = _substitute(poly, by_chain, N)
    chain_eqs = []
    for i, k in lay.chain_players():
        prev = p(i) if k == 1 else p(i) * p(lay.chain(i, k - 1))
        chain_eqs.append(p(lay.chain(i, k)) - prev)
        sources.append(((lay.chain(i, k), 1), XPow(i, k)))
    chain_players = [lay.chain(i, k) for i, k in lay.chain_players()]

    if dprime == 2:
        # two coordinates of degree one: each chain player takes the other's equation
        eqs[chain_players[0]] = chain_eqs[1]
        eqs[chain_players[1]] = chain_eqs[0]
    else:
        assignment = assign_equations([e.variables() for e in chain_eqs], chain_players)
        for player, e in zip(chain_players, assignment.equation_of):
            eqs[player] = chain_eqs[e]
    return _finish(lay, eqs, sources, fixed, free, n)


def _reduced(sys: PolySystem, d: Sequence[int]):
    n, m = sys.n, sys.m
    lay = BinaryLayout(n, [max(di - 1, 0) for di in d], num_extra=m)
    N = lay.num_players
    p = lay.var

    def power(i, e):
        return p(i) if e == 1 else p(i) * p(lay.chain(i, e - 1))

    equations = [_substitute(poly, power, N) for poly in sys]
    sources = [((i, 1), XPow(i)) for i in range(n)]
    for i, k in lay.chain_players():
        prev = p(i) if k == 1 else p(i) * p(lay.chain(i, k - 1))
        equations.append(p(lay.chain(i, k)) - prev)
        sources.append(((lay.chain(i, k), 1), XPow(i, k)))
    extras = range(lay.extra_start, N)
    equations += [p(q) - HALF for q in extras]
    equations += [lay.zero()] * (N - len(equations))
    assignment = assign_equations([e.variables() for e in equations], list(range(N)))
    eqs = [equations[e] for e in assignment.equation_of]
    fixed = [((q, 1), HALF) for q in extras]
    return _finish(lay, eqs, sources, fixed, [], n)


def _finish(lay: BinaryLayout, eqs, sources, fixed, free, n):
    N = lay.num_players
    counts = (2,) * N
    system = EquationSystem(counts, tuple((e,) for e in eqs))
    witness = EncodingWitness(
        method="np",
        n=n,
        strategy_counts=counts,
        domain="cube",
        sources=tuple(sources),
        fixed=tuple(fixed),
        free=tuple(free),
    )
    return system, witness, list(lay.names)


def encode_binary(
    sys: PolySystem,
    reduce_players: bool = False,
    sample_points: Sequence[Sequence] | None = None,
) -> tuple[Game, EncodingWitness]:
    """Game of binary players whose totally mixed equilibria are ``sys``'s
    points in the open unit cube."""
    system, witness, _ = binary_equations(sys, reduce_players)
    check_samples(witness, sample_points)
    return synthesize_game(system), witness
