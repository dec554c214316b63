"""Closed rational intervals and boxes for sound range bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polysys import HornerForm, Polynomial, horner_decompose

__all__ = ["Interval", "Box", "interval_eval"]


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, v) -> "Interval":
        return cls(v, v)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def subset_of(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    @staticmethod
    def _lift(x) -> "Interval":
        return x if isinstance(x, Interval) else Interval.point(x)

    def __add__(self, other):
        other = self._lift(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class Box:
    """Axis-aligned box inside the unit cube, optionally capped on the coordinate sum."""

    intervals: tuple[Interval, ...]
    sum_cap: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple(self.intervals))
        unit = Interval(0, 1)
        for iv in self.intervals:
            if not iv.subset_of(unit):
                raise ValueError(f"box side {iv} leaves [0, 1]")
        if self.sum_cap is not None:
            cap = Fraction(self.sum_cap)
            if not 0 <= cap <= 1:
                raise ValueError("sum cap must lie in [0, 1]")
            object.__setattr__(self, "sum_cap", cap)

    @classmethod
    def unit(cls, n: int, sum_cap=None) -> "Box":
        return cls(tuple(Interval(0, 1) for _ in range(n)), sum_cap)

    @property
    def n(self) -> int:
        return len(self.intervals)

    def sides(self) -> tuple[Interval, ...]:
        """Per-coordinate ranges, tightened by the sum cap when it binds."""
        if self.sum_cap is None:
            return self.intervals
        return tuple(
            Interval(iv.lo, min(iv.hi, self.sum_cap)) if iv.lo <= self.sum_cap else iv
            for iv in self.intervals
        )

    def contains(self, point: Sequence) -> bool:
        if len(point) != self.n:
            return False
        if any(not (iv.lo <= x <= iv.hi) for iv, x in zip(self.intervals, point)):
            return False
        return self.sum_cap is None or sum(point) <= self.sum_cap


def interval_eval(expr: HornerForm | Polynomial, box: Box) -> Interval:
    """Naive interval enclosure of ``expr`` over ``box`` via its Horner form."""
    if isinstance(expr, Polynomial):
        expr = horner_decompose(expr)
    if expr.n != box.n:
        raise ValueError("box dimension does not match expression")
    sides = box.sides()

    def walk(node, depth):
        if depth == expr.n:
            return Interval.point(node)
        x = sides[expr.order[depth]]
        acc = walk(node[-1], depth + 1)
        for child in reversed(node[:-1]):
            acc = acc * x + walk(child, depth + 1)
        return acc

    return walk(expr.root, 0)
