"""Compact three-player encoding of the roots in (0, 1) of one polynomial.

Horner's rule ``h_k = alpha_k + a h_(k+1)`` is split between two players:
Critter's probabilities ``c_1..c_e`` hold the lower half of the registers
(checked by Bob's equations), Bob's ``b_1..b_e`` hold the upper half
(checked by Critter's), and Alice's single equation ``c_e = b_1`` hands the
value across.  Alice's probability of strategy 1 is the unknown ``a``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..game import Game
from ..interval import Box
from ..polysys import Polynomial
from ..synth import EquationSystem, synthesize_game
from .chain import AffineScaling, ChainStep, Reg, select_scalings, target_interval
from .witness import EncodingWitness, Linear, RegValue, XPow, check_samples

__all__ = ["univariate_equations", "encode_univariate"]

ALICE, BOB, CRITTER = 0, 1, 2
HALF = Fraction(1, 2)


def _registers(alpha: list[Fraction]) -> list[ChainStep]:
    """Chain steps for the registers ``h_1 .. h_(d-1)`` (register ``k-1`` is ``h_k``).

    ``h_d = alpha_d`` is a constant folded into the step below it.  For
    ``d = 1`` the single register ``h_1 = alpha_1`` is kept as a constant step.
    """
    d = len(alpha) - 1
    if d == 1:
        return [ChainStep(0, 0, Fraction(0), alpha[1])]
    return [
        ChainStep(k - 1, 0, alpha[d] if k == d - 1 else Reg(k), alpha[k])
        for k in range(d - 1, 0, -1)
    ]


def univariate_equations(
    coeffs: Sequence,
) -> tuple[EquationSystem, EncodingWitness]:
    alpha = [Fraction(c) for c in coeffs]
    while len(alpha) > 1 and alpha[-1] == 0:
        alpha.pop()
    d = len(alpha) - 1
    if d < 1:
        raise ValueError("polynomial must have degree at least 1")
    e = (d + 1) // 2
    odd = d % 2 == 1
    steps = _registers(alpha)
    counts = (2, e + 1, e + 1)
    if odd and e == 1:
        # the lone register is the constant alpha_1; park it at 1/2 so that
        # c_1 = b_1 = 1/2 agrees with Critter's pinning equation
        scalings = {0: AffineScaling(1, alpha[1] - HALF, *_bounds(1))}
    else:
        scalings = select_scalings(steps, Box.unit(1), e)

    nvars = 1 + e + e
    a = Polynomial.variable(nvars, 0)
    b = [Polynomial.variable(nvars, 1 + t) for t in range(e)]
    c = [Polynomial.variable(nvars, 1 + e + t) for t in range(e)]

    def held_by_c(k):  # raw value of h_k through Critter's c_k
        sc = scalings[k - 1]
        return sc.s * c[k - 1] + sc.delta

    def held_by_b(k):  # raw value of h_k through Bob's b_(k-e+1)
        sc = scalings[k - 1]
        return sc.s * b[k - e] + sc.delta

    def const(v):
        return Polynomial.constant(nvars, v)

    # Bob checks the c-registers
    bob = [alpha[0] + a * held_by_c(1)]
    for k in range(1, e):
        bob.append(held_by_c(k) - (alpha[k] + a * held_by_c(k + 1)))

    # Critter checks the b-registers
    critter = []
    for k in range(e, 2 * e):
        if odd and k == d:
            # h_d is the constant alpha_d, so b_e is spare: pin it inside (0, 1)
            critter.append(b[e - 1] - HALF + HALF * sum(b[: e - 1], const(0)))
            break
        inner = const(alpha[d]) if k + 1 == d else held_by_b(k + 1)
        critter.append(held_by_b(k) - (alpha[k] + a * inner))
    alice = [c[e - 1] - b[0]]
    system = EquationSystem(counts, (tuple(alice), tuple(bob), tuple(critter)))

    sources = [((ALICE, 1), XPow(0))]
    sources += [((CRITTER, k), RegValue(k - 1)) for k in range(1, e + 1)]
    bob_regs = e - 1 if odd else e
    sources += [((BOB, t), RegValue(e + t - 2)) for t in range(1, bob_regs + 1)]
    if odd:
        sources.append(
            ((BOB, e), Linear(HALF, tuple(((BOB, t), -HALF) for t in range(1, e))))
        )
    witness = EncodingWitness(
        method="1d",
        n=1,
        strategy_counts=counts,
        domain="cube",
        chain=tuple(steps),
        scalings=scalings,
        sources=tuple(sources),
    )
    return system, witness


def _bounds(budget):
    iv = target_interval(budget)
    return iv.lo, iv.hi


def encode_univariate(
    coeffs: Sequence, sample_points: Sequence[Sequence] | None = None
) -> tuple[Game, EncodingWitness]:
    """Game with formats ``(2, ceil(d/2)+1, ceil(d/2)+1)``; the first
    coordinates of its totally mixed equilibria are the roots in (0, 1) of
    ``sum coeffs[k] a^k``."""
    system, witness = univariate_equations(coeffs)
    check_samples(witness, sample_points)
    return synthesize_game(system), witness
