import itertools
import random

import pytest

from nashcompile.encoders.binary import binary_equations
from nashcompile.encoders.matching import EquationAssignment, MatchingError, assign_equations
from nashcompile.polysys import PolySystem, capacity_np, degree_profile

from helpers import random_poly

CHAIN3 = [{"p11", "p1"}, {"p12", "p1", "p11"}, {"p13", "p1", "p12"}]
OWNERS3 = ["p11", "p12", "p13"]


def test_cubic_chain_example():
    a = assign_equations(CHAIN3, OWNERS3)
    assert a.equation_of == (2, 0, 1)
    assert a.is_valid(CHAIN3)
    assert a.owner_of(0) == 1


def test_permuted_orders_still_match():
    for perm in itertools.permutations(range(3)):
        eqs = [CHAIN3[k] for k in perm]
        for owners in itertools.permutations(OWNERS3):
            assert assign_equations(eqs, list(owners)).is_valid(eqs)


def test_no_matching():
    with pytest.raises(MatchingError):
        assign_equations([{"a", "b"}, {"a"}], ["a", "b"])
    with pytest.raises(MatchingError):
        assign_equations([{"a"}], ["a", "b"])


def test_invalid_assignment_detected():
    assert not EquationAssignment((0, 1, 2), tuple(OWNERS3)).is_valid(CHAIN3)
    assert not EquationAssignment((0, 0, 2), tuple(OWNERS3)).is_valid(CHAIN3)


def random_system(rng, lo=3, hi=12):
    while True:
        n = rng.randint(1, 4)
        m = rng.randint(1, 3)
        polys = tuple(random_poly(rng, n, rng.randint(1, 4), terms=rng.randint(1, 4)) for _ in range(m))
        if any(p.is_constant() for p in polys):
            continue
        sys = PolySystem(polys)
        dprime, _ = capacity_np(degree_profile(sys))
        if lo <= dprime <= hi:
            return sys, dprime


def test_random_profiles_owner_absence():
    rng = random.Random(41)
    for _ in range(50):
        sys, dprime = random_system(rng)
        system, witness, names = binary_equations(sys)
        assert len(names) == dprime + max(sys.m, sys.n)
        for player, row in enumerate(system.equations):
            (poly,) = row
            assert player not in poly.variables()
