"""Move an arbitrary real variety into the open box the encoders require.

Each coordinate goes through ``x = u / (1 - u^2)`` with ``u = 2 t - 1`` and
``t = delta * y``.  The open interval ``-1 < u < 1`` maps bijectively onto the
real line, so the piece of the new zero set with every ``0 < y_i < 1/delta``
is a copy of the original variety.  With ``delta = n`` that piece also
satisfies ``sum(y) < 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polysys import PolySystem, Polynomial, degree_profile

__all__ = ["CoordinateMap", "normalize_to_box", "exact_sqrt"]


def exact_sqrt(q: Fraction) -> Fraction | None:
    """Rational square root of ``q`` when it exists, else ``None``."""
    if q < 0:
        return None
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


@dataclass(frozen=True)
class CoordinateMap:
    """Invertible map between original coordinates ``x`` and box coordinates ``y``."""

    n: int
    delta: Fraction

    def to_box(self, point: Sequence) -> tuple:
        """``x -> y``.  Exact when every ``sqrt(1 + 4 x^2)`` is rational, float otherwise."""
        if len(point) != self.n:
            raise ValueError("dimension mismatch")
        out = []
        for x in point:
            if x == 0:
                u = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
            elif isinstance(x, (int, Fraction)):
                x = Fraction(x)
                root = exact_sqrt(1 + 4 * x * x)
                if root is not None:
                    u = (root - 1) / (2 * x)
                else:
                    u = (math.sqrt(1 + 4 * float(x) ** 2) - 1) / (2 * float(x))
            else:
                # (sqrt(1+4x^2) - 1)/(2x) written without cancellation
                u = 2 * x / (math.sqrt(1 + 4 * x * x) + 1)
            t = (u + 1) / 2
            out.append(t / self.delta if isinstance(t, Fraction) else t / float(self.delta))
        return tuple(out)

    def from_box(self, point: Sequence) -> tuple:
        """``y -> x``; undefined where some ``u = +-1``."""
        if len(point) != self.n:
            raise ValueError("dimension mismatch")
        out = []
        for y in point:
            u = 2 * self.delta * y - 1 if isinstance(y, (int, Fraction)) else 2 * float(self.delta) * y - 1
            out.append(u / (1 - u * u))
        return tuple(out)

    def in_domain(self, point: Sequence) -> bool:
        """True on the open cube ``0 < y_i < 1/delta`` holding the faithful copy."""
        return len(point) == self.n and all(0 < y < 1 / self.delta for y in point)


def normalize_to_box(sys: PolySystem, delta: Fraction | int | None = None) -> tuple[PolySystem, CoordinateMap]:
    """Clear denominators of the substituted system and rescale into the box.

    Equation ``j`` is multiplied by ``prod_i (1 - u_i^2)^{d_ij}``, the smallest
    power that makes every monomial polynomial in ``u``.
    """
    n = sys.n
    delta = Fraction(n if delta is None else delta)
    profile = degree_profile(sys)
    # u_i = 2 delta y_i - 1 as polynomials in y
    us = [2 * delta * Polynomial.variable(n, i) - 1 for i in range(n)]
    denoms = [1 - u * u for u in us]
    cache: dict = {}
    new_polys = []
    for j, poly in enumerate(sys):
        degs = profile.table[j]
        total = Polynomial(n)
        for mono, coef in poly.terms.items():
            term = Polynomial.constant(n, coef)
            for i, e in enumerate(mono):
                if e:
                    term = term * _cached_power(us, i, e, cache)
                if degs[i] - e:
                    term = term * _cached_power(denoms, i, degs[i] - e, cache)
            total = total + term
        new_polys.append(total)
    return PolySystem(tuple(new_polys)), CoordinateMap(n, delta)


def _cached_power(bases: list, i: int, e: int, cache: dict) -> Polynomial:
    key = (id(bases), i, e)
    if key not in cache:
        cache[key] = bases[i] ** e
    return cache[key]
