"""Local topological degree of a planar polynomial map via winding numbers."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..polysys import PolySystem, Polynomial

__all__ = ["local_degree", "power_map", "translated_power_system", "DegreeError"]

MAX_SAMPLES = 2**16
ZERO_TOL = 1e-12


class DegreeError(ValueError):
    pass


def _winding(F, center, radius, samples):
    t = np.linspace(0.0, 2 * math.pi, samples + 1)
    xs = center[0] + radius * np.cos(t)
    ys = center[1] + radius * np.sin(t)
    u = np.asarray(F[0].eval_float(xs, ys), dtype=float) * np.ones_like(t)
    v = np.asarray(F[1].eval_float(xs, ys), dtype=float) * np.ones_like(t)
    if np.min(np.hypot(u, v)) < ZERO_TOL:
        raise DegreeError("radius hits zero set")
    angles = np.arctan2(v, u)
    steps = np.diff(angles)
    steps = (steps + math.pi) % (2 * math.pi) - math.pi
    return steps


def local_degree(F: Sequence[Polynomial], center=(0, 0), radius=Fraction(1, 2), samples: int = 64) -> int:
    """Winding number of ``F`` around the origin along the circle of ``radius``.

    Samples double until every angle increment stays below ``pi/2``, so no
    half-turn can hide between neighbours.
    """
    if len(F) != 2 or any(p.n != 2 for p in F):
        raise ValueError("need a pair of polynomials in two variables")
    if samples < 64:
        raise ValueError("at least 64 samples are required")
    if radius <= 0:
        raise ValueError("radius must be positive")
    center = (float(center[0]), float(center[1]))
    radius = float(radius)
    while samples <= MAX_SAMPLES:
        steps = _winding(F, center, radius, samples)
        if np.max(np.abs(steps)) < math.pi / 2:
            return int(round(steps.sum() / (2 * math.pi)))
        samples *= 2
    raise DegreeError(f"winding number did not converge with {MAX_SAMPLES} samples")


def power_map(k: int, shift: Fraction = Fraction(0)) -> tuple[Polynomial, Polynomial]:
    """Real and imaginary parts of ``(z - shift(1+i))^k`` with ``z = x + iy``."""
    if k < 1:
        raise ValueError("power must be positive")
    x, y = Polynomial.variable(2, 0) - shift, Polynomial.variable(2, 1) - shift
    re, im = Polynomial.constant(2, 1), Polynomial(2)
    for _ in range(k):
        re, im = re * x - im * y, re * y + im * x
    return re, im


def translated_power_system(k: int = 2, shift: Fraction = Fraction(1, 4)) -> PolySystem:
    """``z -> z^k`` moved so its only zero sits at ``(shift, shift)`` inside the box."""
    return PolySystem(power_map(k, Fraction(shift)))
