"""Horner gadget chains and the affine rescaling of their intermediates.

A chain evaluates a polynomial one multiply-add at a time.  Step ``k``
computes ``x[multiplier] * factor + addend`` where ``factor`` and ``addend``
are constants or earlier registers.  A step either stores its value in a
register (later held, rescaled, by one probability) or asserts that the
value is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from ..interval import Box, Interval
from ..polysys import DegreeProfile, PolySystem, degree_profile, horner_decompose

__all__ = [
    "Reg",
    "ChainStep",
    "AffineScaling",
    "build_chain_3p",
    "chain_values",
    "chain_intervals",
    "select_scalings",
    "target_interval",
]


@dataclass(frozen=True)
class Reg:
    """Reference to the raw value held in register ``index``."""

    index: int

    def __str__(self):
        return f"h{self.index + 1}"


Operand = Union[Reg, Fraction]


@dataclass(frozen=True)
class ChainStep:
    """``target = x[multiplier] * factor + addend``; ``target is None`` means ``0 = ...``."""

    target: int | None
    multiplier: int
    factor: Operand
    addend: Operand
    equation: int = 0

    @property
    def kind(self) -> str:
        return "constrain" if self.target is None else "define"

    def refs(self) -> list[int]:
        return [op.index for op in (self.factor, self.addend) if isinstance(op, Reg)]

    def __str__(self):
        lhs = "0" if self.target is None else str(Reg(self.target))
        return f"{lhs} = x{self.multiplier + 1} * {self.factor} + {self.addend}"


@dataclass(frozen=True)
class AffineScaling:
    """Raw register value ``v`` is stored as the probability ``(v - delta) / s``."""

    s: Fraction
    delta: Fraction
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        for name in ("s", "delta", "lo", "hi"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.s == 0:
            raise ValueError("scaling factor must be nonzero")
        if not 0 < self.lo <= self.hi < 1:
            raise ValueError(f"target [{self.lo}, {self.hi}] must sit inside (0, 1)")

    def to_prob(self, raw):
        if isinstance(raw, (int, Fraction)):
            return (raw - self.delta) / self.s
        return (raw - float(self.delta)) / float(self.s)

    def to_raw(self, prob):
        return self.s * prob + self.delta


def build_chain_3p(
    sys: PolySystem,
    profile: DegreeProfile | None = None,
    order: Sequence[int] | None = None,
) -> list[ChainStep]:
    """Horner chain for every equation, innermost variable first.

    Equation ``j`` contributes ``prod_i (1 + d_ij) - 1`` steps; its last step
    is the constraint ``0 = F_j``.  Registers are numbered in creation order.
    """
    profile = profile or degree_profile(sys)
    order = tuple(range(sys.n)) if order is None else tuple(order)
    steps: list[ChainStep] = []
    counter = [0]

    for j, poly in enumerate(sys):
        if poly.is_constant():
            raise ValueError(f"equation {j + 1} is constant; nothing to encode")
        degrees = tuple(profile.table[j][v] for v in order)
        form = horner_decompose(poly, order, degrees)
        eq_steps: list[ChainStep] = []

        def emit(mult, factor, addend):
            reg = counter[0]
            counter[0] += 1
            eq_steps.append(ChainStep(reg, mult, factor, addend, j))
            return Reg(reg)

        def value(node, depth) -> Operand:
            if depth == sys.n:
                return node
            acc = value(node[-1], depth + 1)
            for child in reversed(node[:-1]):
                acc = emit(order[depth], acc, value(child, depth + 1))
            return acc

        value(form.root, 0)
        last = eq_steps[-1]
        eq_steps[-1] = ChainStep(None, last.multiplier, last.factor, last.addend, j)
        counter[0] -= 1
        steps.extend(eq_steps)
    return steps


def _operand(op: Operand, regs: dict):
    return regs[op.index] if isinstance(op, Reg) else op


def chain_values(steps: Iterable[ChainStep], point: Sequence) -> tuple[dict[int, object], list]:
    """Replay the chain at ``point``; returns register values and constraint values."""
    regs: dict[int, object] = {}
    constraints = []
    for step in steps:
        v = point[step.multiplier] * _operand(step.factor, regs) + _operand(step.addend, regs)
        if step.target is None:
            constraints.append(v)
        else:
            regs[step.target] = v
    return regs, constraints


def chain_intervals(steps: Iterable[ChainStep], box: Box) -> dict[int, Interval]:
    """Sound enclosure of every register over ``box``."""
    sides = box.sides()
    regs: dict[int, Interval] = {}
    for step in steps:
        if step.target is None:
            continue
        factor = regs[step.factor.index] if isinstance(step.factor, Reg) else step.factor
        addend = regs[step.addend.index] if isinstance(step.addend, Reg) else step.addend
        regs[step.target] = sides[step.multiplier] * factor + addend
    return regs


def target_interval(budget: int) -> Interval:
    """``[1/(4B), 1/(2B)]``: ``B`` values there stay positive and sum to at most 1/2."""
    budget = max(budget, 1)
    return Interval(Fraction(1, 4 * budget), Fraction(1, 2 * budget))


def _fit(bound: Interval, target: Interval) -> AffineScaling:
    L, U = bound.lo, bound.hi
    lo, hi = target.lo, target.hi
    if U > L:
        s = (U - L) / (hi - lo)
        return AffineScaling(s, L - s * lo, lo, hi)
    return AffineScaling(1, L - (lo + hi) / 2, lo, hi)


def select_scalings(
    steps: Sequence[ChainStep], box: Box, budget: int | None = None
) -> dict[int, AffineScaling]:
    """Map each register's range over ``box`` affinely onto the common target.

    ``budget`` is the number of registers that must fit together under one
    simplex; it defaults to the number of registers in ``steps``.
    """
    bounds = chain_intervals(steps, box)
    target = target_interval(len(bounds) if budget is None else budget)
    return {reg: _fit(iv, target) for reg, iv in bounds.items()}
