from fractions import Fraction as F
import random

import numpy as np
import pytest

from nashcompile.encoders import (
    DomainError,
    EncodingWitness,
    WitnessFormatError,
    XPow,
    binary_equations,
    deserialize_witness,
    encode,
    encode_binary,
    encode_three_player,
    encode_univariate,
    replay_witness,
    serialize_witness,
    three_player_equations,
    univariate_equations,
)
from nashcompile.game import MixedProfile, indifference_residuals, is_totally_mixed_equilibrium
from nashcompile.polysys import PolySystem, Polynomial, capacity_3p, capacity_np, degree_profile, parse_system

from helpers import random_poly

QUAD = parse_system("vars: x1\neq: x1^2 - x1 + 3/16 = 0")
HALF_EQ = parse_system("vars: x1\neq: x1 - 1/2 = 0")
ROOTS = (F(1, 4), F(3, 4))


def eq_strings(system):
    return [[str(p) for p in row] for row in system.equations]


def assert_equilibrium(game, witness, point):
    prof = replay_witness(witness, point)
    assert prof.exact
    assert is_totally_mixed_equilibrium(game, prof)
    return prof


# -- three-player encoding ---------------------------------------------------


def test_three_player_quadratic():
    game, witness = encode_three_player(QUAD)
    assert game.strategy_counts == (2, 2, 3)
    prof = assert_equilibrium(game, witness, (F(1, 4),))
    assert prof == MixedProfile(([F(3, 4), F(1, 4)], [F(11, 16), F(5, 16)], [F(1, 3)] * 3))
    prof = assert_equilibrium(game, witness, (F(3, 4),))
    assert list(prof[1]) == [F(9, 16), F(7, 16)]


def test_three_player_non_root_flagged():
    game, witness = encode_three_player(QUAD)
    rep = indifference_residuals(game, replay_witness(witness, (F(1, 2),)))
    assert rep.all_interior
    assert rep.max_abs == F(1, 16)


def test_three_player_equations_quadratic():
    system, _ = three_player_equations(QUAD)
    assert eq_strings(system) == [
        ["x3 - 1/3"],
        ["x4 - 1/3"],
        ["-x1 + 4*x2 - 1", "4*x1*x2 - 2*x1 + 3/16"],
    ]


def test_three_player_linear():
    game, witness = encode_three_player(HALF_EQ)
    assert game.strategy_counts == (2, 1, 2)
    system, _ = three_player_equations(HALF_EQ)
    assert eq_strings(system) == [["x2 - 1/2"], [], ["x1 - 1/2"]]
    assert_equilibrium(game, witness, (F(1, 2),))
    assert not is_totally_mixed_equilibrium(game, replay_witness(witness, (F(1, 3),)))


def test_three_player_point_system():
    sys = parse_system("vars: x1 x2\neq: x1 - 1/2 = 0\neq: x2 - 1/4 = 0")
    game, witness = encode_three_player(sys)
    assert game.strategy_counts == (3, 1, 3)
    assert witness.free == ()
    assert_equilibrium(game, witness, (F(1, 2), F(1, 4)))


def test_three_player_free_block_when_m_exceeds_n():
    sys = parse_system("vars: x1\neq: x1 - 1/3 = 0\neq: 3*x1^2 - x1 = 0")
    game, witness = encode_three_player(sys)
    D, formats = capacity_3p(degree_profile(sys))
    assert game.strategy_counts == formats
    assert witness.free
    assert_equilibrium(game, witness, (F(1, 3),))


def test_three_player_random_systems_with_seeded_roots():
    rng = random.Random(51)
    for _ in range(15):
        n = rng.randint(1, 2)
        root = [F(rng.randint(1, 9), 10 * n) for _ in range(n)]
        polys = []
        for _ in range(rng.randint(1, 2)):
            p = random_poly(rng, n, 2, terms=3)
            p = p - p(*root)
            if not p.is_zero() and not p.is_constant():
                polys.append(p)
        if not polys:
            continue
        sys = PolySystem(tuple(polys))
        game, witness = encode_three_player(sys)
        assert game.strategy_counts == capacity_3p(degree_profile(sys))[1]
        assert_equilibrium(game, witness, root)


def test_three_player_sample_outside_simplex():
    with pytest.raises(DomainError, match="open simplex"):
        encode_three_player(QUAD, sample_points=[(F(3, 2),)])
    encode_three_player(QUAD, sample_points=[(F(1, 4),)])


# -- binary encoding ---------------------------------------------------------


def test_binary_quadratic_display():
    system, witness, names = binary_equations(QUAD)
    assert names == ["p1", "p1_1", "p1_2"]
    assert eq_strings(system) == [["x2*x3 - x2 + 3/16"], ["-x1 + x3"], ["-x1 + x2"]]
    game, witness = encode_binary(QUAD)
    prof = assert_equilibrium(game, witness, (F(3, 4),))
    assert [v[1] for v in prof.vectors] == [F(3, 4)] * 3
    assert_equilibrium(game, witness, (F(1, 4),))


def test_binary_linear_display():
    system, witness, names = binary_equations(HALF_EQ)
    assert names == ["p1", "p1_1"]
    assert eq_strings(system) == [["x2 - 1/2"], ["x1 - 1/2"]]
    game, witness = encode_binary(HALF_EQ)
    assert_equilibrium(game, witness, (F(1, 2),))


def test_binary_product_first_branch():
    sys = parse_system("vars: x1 x2\neq: x1*x2 - 1/8 = 0")
    system, witness, names = binary_equations(sys)
    assert names == ["p1", "p2", "p1_1", "p2_1"]
    assert eq_strings(system) == [["x3*x4 - 1/8"], ["0"], ["-x2 + x4"], ["-x1 + x3"]]
    game, witness = encode_binary(sys)
    assert_equilibrium(game, witness, (F(1, 2), F(1, 4)))


def test_binary_player_counts():
    for sys in (QUAD, HALF_EQ, parse_system("vars: x1 x2 x3\neq: x1^2*x3 + x2 - 1 = 0\neq: x2*x3 - x1 = 0")):
        game, _ = encode_binary(sys)
        dprime, _ = capacity_np(degree_profile(sys))
        assert game.strategy_counts == (2,) * (dprime + max(sys.m, sys.n))


def test_binary_reduced_players():
    sys = parse_system("vars: x1 x2 x3\neq: x1*x2 + x3 - 1 = 0")
    system, witness, names = binary_equations(sys, reduce_players=True)
    assert names == ["p1", "p2", "p3", "q1"]
    game, witness = encode_binary(sys, reduce_players=True)
    assert game.num_players == 3 + 1
    assert_equilibrium(game, witness, (F(1, 2), F(1, 2), F(3, 4)))
    # flag has no effect when n <= m
    assert encode_binary(QUAD, reduce_players=True)[0] == encode_binary(QUAD)[0]


def test_binary_reduced_uniform_count():
    sys = parse_system("vars: x1 x2\neq: x1^2*x2^2 - 1/16 = 0")
    game, witness = encode_binary(sys, reduce_players=True)
    assert game.num_players == 2 * 2 + 1
    assert_equilibrium(game, witness, (F(1, 2), F(1, 2)))


def test_binary_random_systems_with_seeded_roots():
    rng = random.Random(52)
    done = 0
    while done < 15:
        n = rng.randint(1, 3)
        root = [F(rng.randint(1, 9), 10) for _ in range(n)]
        polys = []
        for _ in range(rng.randint(1, 3)):
            p = random_poly(rng, n, 2, terms=3)
            p = p - p(*root)
            if not p.is_zero() and not p.is_constant():
                polys.append(p)
        if not polys:
            continue
        done += 1
        sys = PolySystem(tuple(polys))
        for reduce_players in (False, True):
            game, witness = encode_binary(sys, reduce_players=reduce_players)
            assert_equilibrium(game, witness, root)


def test_binary_sparsity():
    game, _ = encode_binary(QUAD)
    system, _, _ = binary_equations(QUAD)
    for i, tensor in enumerate(game.payoffs):
        named = system.participants(i, 1) | {i}
        for k in set(range(game.num_players)) - named:
            assert np.array_equal(np.take(tensor, 0, axis=k), np.take(tensor, 1, axis=k))


def test_binary_cube_domain():
    with pytest.raises(DomainError, match="open cube"):
        encode_binary(QUAD, sample_points=[(F(1),)])


# -- univariate encoding -----------------------------------------------------


def test_univariate_quadratic():
    system, witness = univariate_equations([F(3, 16), -1, 1])
    assert system.strategy_counts == (2, 2, 2)
    assert eq_strings(system) == [["-x2 + x3"], ["4*x1*x3 - 2*x1 + 3/16"], ["-x1 + 4*x2 - 1"]]
    game, witness = encode_univariate([F(3, 16), -1, 1])
    for a in ROOTS:
        prof = assert_equilibrium(game, witness, (a,))
        assert prof[1][1] == prof[2][1] == (a + 1) / 4


@pytest.mark.parametrize("degree", [1, 2, 3, 4, 5, 6])
def test_univariate_formats_and_soundness(degree):
    rng = random.Random(degree)
    roots = [F(rng.randint(1, 19), 20)]
    poly = Polynomial.variable(1, 0) - roots[0]
    for _ in range(degree - 1):
        poly = poly * (Polynomial.variable(1, 0) + rng.randint(1, 3))
    coeffs = [poly.coefficient((k,)) for k in range(degree + 1)]
    game, witness = encode_univariate(coeffs)
    e = (degree + 1) // 2
    assert game.strategy_counts == (2, e + 1, e + 1)
    assert_equilibrium(game, witness, roots)


def test_univariate_rejects_constant():
    with pytest.raises(ValueError):
        encode_univariate([F(1)])


def test_univariate_no_roots_game_exists():
    game, witness = encode_univariate([1, 0, 1])
    assert game.strategy_counts == (2, 2, 2)
    for a in (F(1, 4), F(1, 2), F(3, 4)):
        assert not is_totally_mixed_equilibrium(game, replay_witness(witness, (a,)))


# -- pipeline and witness format ---------------------------------------------


@pytest.mark.parametrize("method", ["3p", "np", "1d"])
def test_pipeline_quadratic(method):
    game, witness = encode(method, QUAD)
    for a in ROOTS:
        assert_equilibrium(game, witness, (a,))


@pytest.mark.parametrize("method", ["3p", "np", "1d"])
def test_pipeline_normalized(method):
    sys = parse_system("vars: x1\neq: x1 - 2 = 0")
    game, witness = encode(method, sys, normalize=True)
    prof = replay_witness(witness, (2.0,))
    rep = indifference_residuals(game, prof)
    assert rep.all_interior and rep.max_abs <= 1e-9
    with pytest.raises(DomainError):
        encode(method, sys, normalize=True, sample_points=[(float("-inf"),)])


def test_pipeline_errors():
    with pytest.raises(ValueError, match="unknown method"):
        encode("4p", QUAD)
    with pytest.raises(ValueError, match="one equation in one unknown"):
        encode("1d", parse_system("vars: x1 x2\neq: x1*x2 = 0"))


@pytest.mark.parametrize("method", ["3p", "np", "1d"])
def test_witness_round_trip(method):
    for sys, normalize in ((QUAD, False), (QUAD, True), (HALF_EQ, False)):
        _, witness = encode(method, sys, normalize=normalize)
        text = serialize_witness(witness)
        assert deserialize_witness(text) == witness
        assert serialize_witness(deserialize_witness(text)) == text


def test_witness_text_example():
    _, witness = encode_univariate([F(3, 16), -1, 1])
    text = serialize_witness(witness)
    assert text.startswith("method: 1d\ninputs: 1\nstrategies: 2 2 2\ndomain: cube\n")
    assert "s=4 delta=-2" in text


def test_witness_format_errors():
    _, witness = encode_three_player(QUAD)
    text = serialize_witness(witness)
    with pytest.raises(WitnessFormatError):
        deserialize_witness(text.replace("method: 3p", "method: 5p"))
    with pytest.raises(WitnessFormatError):
        deserialize_witness("")


def test_witness_validation():
    with pytest.raises(ValueError):
        EncodingWitness("3p", 1, (2, 2), "simplex", sources=(((0, 1), XPow(0)),))
    with pytest.raises(ValueError):
        # coordinate (0, 1) given twice
        EncodingWitness("np", 1, (2,), "cube", sources=(((0, 1), XPow(0)), ((0, 1), XPow(0))))


def test_replay_errors():
    _, witness = encode_three_player(QUAD)
    with pytest.raises(ValueError):
        replay_witness(witness, (F(1, 4), F(1, 4)))
    with pytest.raises(DomainError):
        replay_witness(witness, (F(0),))


def test_replay_float_mode():
    game, witness = encode_three_player(QUAD)
    prof = replay_witness(witness, (0.25,))
    assert not prof.exact
    assert indifference_residuals(game, prof).max_abs < 1e-12
