from fractions import Fraction as F
import random

import pytest

from nashcompile.encoders.chain import (
    AffineScaling,
    ChainStep,
    Reg,
    build_chain_3p,
    chain_intervals,
    chain_values,
    select_scalings,
    target_interval,
)
from nashcompile.interval import Box, Interval
from nashcompile.polysys import PolySystem, Polynomial, capacity_3p, degree_profile, parse_system

from helpers import random_poly

QUAD = parse_system("vars: x1\neq: x1^2 - x1 + 3/16 = 0")


def test_quadratic_chain():
    steps = build_chain_3p(QUAD)
    assert steps == [ChainStep(0, 0, F(1), F(-1), 0), ChainStep(None, 0, Reg(0), F(3, 16), 0)]
    assert [s.kind for s in steps] == ["define", "constrain"]
    assert str(steps[0]) == "h1 = x1 * 1 + -1"


def test_linear_chain():
    steps = build_chain_3p(parse_system("vars: x1\neq: x1 - 1/2 = 0"))
    assert steps == [ChainStep(None, 0, F(1), F(-1, 2), 0)]


def test_product_chain_length():
    steps = build_chain_3p(parse_system("vars: x1 x2\neq: x1*x2 = 0"))
    assert len(steps) == 3
    assert steps[-1].kind == "constrain" and steps[-1].multiplier == 0


def test_constant_equation_rejected():
    with pytest.raises(ValueError, match="constant"):
        build_chain_3p(PolySystem((Polynomial.constant(1, 3),)))


def test_chain_replay_random():
    rng = random.Random(31)
    for _ in range(50):
        n = rng.randint(1, 3)
        polys = [p for p in (random_poly(rng, n, 2, terms=4) for _ in range(rng.randint(1, 2))) if not p.is_constant()]
        if not polys:
            continue
        sys = PolySystem(tuple(polys))
        steps = build_chain_3p(sys)
        D, _ = capacity_3p(degree_profile(sys))
        assert len(steps) == D
        assert sum(s.kind == "constrain" for s in steps) == sys.m
        point = [F(rng.randint(-4, 4), 3) for _ in range(n)]
        _, constraints = chain_values(steps, point)
        assert constraints == [p(*point) for p in sys]


def test_scaling_examples():
    target = target_interval(1)
    assert target == Interval(F(1, 4), F(1, 2))
    scalings = select_scalings(build_chain_3p(QUAD), Box.unit(1))
    sc = scalings[0]
    assert (sc.s, sc.delta) == (4, -2)
    assert sc.to_prob(F(3, 4) - 1) == F(7, 16)
    assert sc.to_raw(F(7, 16)) == F(-1, 4)
    # constant register: midpoint rule
    const = select_scalings([ChainStep(0, 0, F(0), F(0)), ChainStep(None, 0, Reg(0), F(1))], Box.unit(1))[0]
    assert (const.s, const.delta) == (1, F(-3, 8))
    assert const.to_prob(0) == F(3, 8)
    assert target_interval(4) == Interval(F(1, 16), F(1, 8))


def test_scaling_rejects_bad_targets():
    with pytest.raises(ValueError):
        AffineScaling(0, 0, F(1, 4), F(1, 2))
    with pytest.raises(ValueError):
        AffineScaling(1, 0, F(0), F(1, 2))


def test_scalings_land_in_target():
    rng = random.Random(32)
    cases = 0
    while cases < 10:
        n = rng.randint(1, 3)
        p = random_poly(rng, n, 2, terms=5)
        if p.is_constant():
            continue
        cases += 1
        steps = build_chain_3p(PolySystem((p,)))
        box = Box.unit(n, F(1, n + 1))
        scalings = select_scalings(steps, box)
        bounds = chain_intervals(steps, box)
        for _ in range(100):
            pt = [F(rng.randint(0, 1000), 1000 * (n + 1)) for _ in range(n)]
            regs, _ = chain_values(steps, pt)
            for reg, raw in regs.items():
                assert raw in bounds[reg]
                prob = scalings[reg].to_prob(raw)
                assert scalings[reg].lo <= prob <= scalings[reg].hi
