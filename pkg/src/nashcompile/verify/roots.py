"""Exact isolation of the real roots in (0, 1) of a rational polynomial.

Polynomials are coefficient lists, lowest degree first.  The square-free part
gets a Sturm sequence; ``V(a) - V(b)`` then counts its distinct roots in
``(a, b]``, and bisection splits intervals until each holds one root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["Root", "RootList", "roots_in_unit_interval", "sturm_sequence", "square_free"]


def _trim(p: list[Fraction]) -> list[Fraction]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _deriv(p: Sequence[Fraction]) -> list[Fraction]:
    return [k * c for k, c in enumerate(p)][1:]


def _divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            r[shift + i] -= f * c
        r = _trim(r)
    return _trim(q), r


def _gcd(a, b) -> list[Fraction]:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
    return [c / a[-1] for c in a]


def square_free(p: Sequence) -> list[Fraction]:
    """``p / gcd(p, p')``: same distinct roots, all simple."""
    p = _trim([Fraction(c) for c in p])
    if not p:
        raise ValueError("zero polynomial")
    if len(p) == 1:
        return p
    g = _gcd(p, _deriv(p))
    return _divmod(p, g)[0]


def sturm_sequence(p: Sequence) -> list[list[Fraction]]:
    seq = [_trim([Fraction(c) for c in p])]
    seq.append(_deriv(seq[0]))
    while seq[-1]:
        rem = _divmod(seq[-2], seq[-1])[1]
        seq.append([-c for c in rem])
    return seq[:-1]


def _variations(seq, x: Fraction) -> int:
    signs = [v for v in (_eval(p, x) for p in seq) if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


@dataclass(frozen=True)
class Root:
    """One root inside ``(lo, hi]``; ``lo == hi`` when it was hit exactly."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self):
        return float(self.midpoint)


@dataclass(frozen=True)
class RootList:
    roots: tuple[Root, ...]

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def midpoints(self) -> list[Fraction]:
        return [r.midpoint for r in self.roots]

    def to_text(self) -> str:
        lines = [f"count: {len(self.roots)}"]
        for r in self.roots:
            if r.exact:
                lines.append(f"root {r.lo} exact")
            else:
                lines.append(f"root ({r.lo}, {r.hi}] ~ {float(r.midpoint)!r}")
        return "\n".join(lines) + "\n"


def roots_in_unit_interval(coeffs: Sequence, width: Fraction = Fraction(1, 2**52)) -> RootList:
    """Distinct real roots of ``sum coeffs[k] x^k`` in the open interval (0, 1).

    Each is reported once, either exactly or as an interval no wider than
    ``width``.
    """
    p = square_free(coeffs)
    if len(p) == 1:
        return RootList(())
    seq = sturm_sequence(p)
    width = Fraction(width)
    found: list[Root] = []

    def isolate(lo: Fraction, hi: Fraction, count: int):
        # count = number of roots in (lo, hi]
        if count == 0:
            return
        if _eval(p, hi) == 0 and count == 1:
            found.append(Root(hi, hi))
            return
        if count == 1 and hi - lo <= width:
            found.append(Root(lo, hi))
            return
        mid = (lo + hi) / 2
        left = _variations(seq, lo) - _variations(seq, mid)
        isolate(lo, mid, left)
        isolate(mid, hi, count - left)

    zero, one = Fraction(0), Fraction(1)
    total = _variations(seq, zero) - _variations(seq, one)
    if _eval(p, one) == 0:
        # drop the root at 1 itself: search (0, 1 - eps] with eps below every other root gap
        total -= 1
        isolate_upper = _below_one(p, seq)
        isolate(zero, isolate_upper, total)
    else:
        isolate(zero, one, total)
    return RootList(tuple(sorted(found, key=lambda r: r.lo)))


def _below_one(p, seq) -> Fraction:
    """A point ``t < 1`` with no root of ``p`` in ``(t, 1)``."""
    t = Fraction(1, 2)
    while _variations(seq, t) - _variations(seq, Fraction(1)) > 1:
        t = (t + 1) / 2
    return t
