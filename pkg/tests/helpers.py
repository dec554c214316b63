"""Shared generators for the test suite."""

from fractions import Fraction as F

import sympy

from nashcompile.polysys import Polynomial


def random_poly(rng, n, deg, terms=6):
    out = {}
    for _ in range(terms):
        mono = tuple(rng.randint(0, deg) for _ in range(n))
        out[mono] = F(rng.randint(-9, 9), rng.randint(1, 6))
    return Polynomial(n, out)


def to_sympy(poly, syms):
    return sum(
        sympy.Rational(c.numerator, c.denominator) * sympy.prod([s**e for s, e in zip(syms, mono)])
        for mono, c in poly.terms.items()
    )


def random_interior_profile(rng, counts):
    """Exact profile with every probability in (0, 1)."""
    vecs = []
    for k in counts:
        weights = [rng.randint(1, 9) for _ in range(k)]
        total = sum(weights)
        vecs.append([F(w, total) for w in weights])
    return vecs
