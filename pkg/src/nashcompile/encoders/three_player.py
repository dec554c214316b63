"""Three-player encoding of an arbitrary system via Horner gadget chains.

Alice's free coordinates ``a_1..a_n`` carry the point of the variety.  Every
intermediate of every Horner chain is held, affinely rescaled, by one of
Bob's probabilities ``b_k``; Critter's indifference equations are the gadget
equations themselves.  Alice's and Bob's equations only pin Critter's
probabilities to ``1/(D+1)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..game import Game
from ..interval import Box
from ..polysys import PolySystem, Polynomial, capacity_3p, degree_profile
from ..synth import EquationSystem, synthesize_game
from .chain import Reg, build_chain_3p, select_scalings
from .witness import EncodingWitness, RegValue, XPow, check_samples

__all__ = ["three_player_equations", "encode_three_player"]

ALICE, BOB, CRITTER = 0, 1, 2


def three_player_equations(
    sys: PolySystem, box: Box | None = None
) -> tuple[EquationSystem, EncodingWitness]:
    """Indifference equations of the three players plus the replay witness.

    ``box`` bounds Alice's coordinates for the register rescaling; it defaults
    to the unit simplex the encoding assumes.
    """
    n, m = sys.n, sys.m
    profile = degree_profile(sys)
    D, counts = capacity_3p(profile)
    B = D - m
    steps = build_chain_3p(sys, profile)
    box = box or Box.unit(n, 1)
    scalings = select_scalings(steps, box, B)

    nvars = n + B + D
    a = [Polynomial.variable(nvars, i) for i in range(n)]
    b = [Polynomial.variable(nvars, n + k) for k in range(B)]
    c = [Polynomial.variable(nvars, n + B + k) for k in range(D)]

    def raw(op) -> Polynomial:
        if isinstance(op, Reg):
            sc = scalings[op.index]
            return sc.s * b[op.index] + sc.delta
        return Polynomial.constant(nvars, op)

    critter = []
    for step in steps:
        rhs = a[step.multiplier] * raw(step.factor) + raw(step.addend)
        critter.append(rhs if step.target is None else raw(Reg(step.target)) - rhs)

    # n + B equations each pin one c; the surplus (n > m) is left empty and
    # the shortfall (m > n) leaves c's free.
    value = Fraction(1, D + 1)
    pins = [c[k] - value for k in range(min(n + B, D))]
    pins += [Polynomial(nvars)] * (n + B - len(pins))
    alice, bob = pins[:n], pins[n:]
    system = EquationSystem(counts, (tuple(alice), tuple(bob), tuple(critter)))

    witness = EncodingWitness(
        method="3p",
        n=n,
        strategy_counts=counts,
        domain="simplex",
        chain=tuple(steps),
        scalings=scalings,
        sources=tuple(((ALICE, i + 1), XPow(i)) for i in range(n))
        + tuple(((BOB, k + 1), RegValue(k)) for k in range(B)),
        fixed=tuple(((CRITTER, k + 1), value) for k in range(min(n + B, D))),
        free=tuple((CRITTER, k + 1) for k in range(min(n + B, D), D)),
    )
    return system, witness


def encode_three_player(
    sys: PolySystem, sample_points: Sequence[Sequence] | None = None
) -> tuple[Game, EncodingWitness]:
    """Game with formats ``(n+1, D-m+1, D+1)`` whose totally mixed equilibria
    are the points of ``sys`` inside the open simplex, times a free simplex
    when ``m > n``."""
    system, witness = three_player_equations(sys)
    check_samples(witness, sample_points)
    return synthesize_game(system), witness
