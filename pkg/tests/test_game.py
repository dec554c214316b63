from fractions import Fraction as F
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nashcompile.game import (
    Game,
    GameFormatError,
    MixedProfile,
    deserialize_game,
    deserialize_profile,
    expected_payoff,
    indifference_residuals,
    is_totally_mixed_equilibrium,
    pure_vs_profile_payoff,
    serialize_game,
    serialize_profile,
)

from helpers import random_interior_profile

PENNIES = Game((2, 2), (np.array([[1, -1], [-1, 1]]), np.array([[-1, 1], [1, -1]])))
HALF = F(1, 2)


def random_game(rng, counts, span=6):
    size = int(np.prod(counts))
    return Game(
        counts,
        tuple(
            np.array([F(rng.randint(-span, span), rng.randint(1, 4)) for _ in range(size)]).reshape(counts)
            for _ in counts
        ),
    )


def test_expected_payoff_examples():
    uniform = MixedProfile.uniform((2, 2))
    assert expected_payoff(PENNIES, 0, uniform) == 0
    const = Game((2, 3), (np.full((2, 3), 7), np.full((2, 3), F(-1, 3))))
    prof = MixedProfile(([F(1, 5), F(4, 5)], [F(1, 2), F(1, 6), F(1, 3)]))
    assert expected_payoff(const, 0, prof) == 7
    assert expected_payoff(const, 1, prof) == F(-1, 3)
    g = Game((2, 2), (np.array([[1, 0], [0, 0]]), np.zeros((2, 2))))
    assert expected_payoff(g, 0, MixedProfile(([HALF, HALF], [F(1, 3), F(2, 3)]))) == F(1, 6)


def test_pure_payoff_examples():
    g = Game((2, 2), (np.array([[1, 0], [0, 0]]), np.zeros((2, 2))))
    prof = MixedProfile(([HALF, HALF], [F(1, 3), F(2, 3)]))
    assert pure_vs_profile_payoff(g, 0, 0, prof) == F(1, 3)
    assert pure_vs_profile_payoff(g, 0, 1, prof) == 0
    with pytest.raises(IndexError):
        pure_vs_profile_payoff(g, 0, 2, prof)


def test_single_strategy_opponent_is_slice():
    rng = random.Random(1)
    g = random_game(rng, (3, 1))
    prof = MixedProfile(([F(1, 3)] * 3, [F(1)]))
    for j in range(3):
        assert pure_vs_profile_payoff(g, 1, 0, prof) == sum(F(1, 3) * g.payoffs[1][k, 0] for k in range(3))
        assert pure_vs_profile_payoff(g, 0, j, prof) == g.payoffs[0][j, 0]


def test_residual_examples():
    rep = indifference_residuals(PENNIES, MixedProfile.uniform((2, 2)))
    assert rep.flat() == [0, 0]
    rep = indifference_residuals(PENNIES, MixedProfile(([1, 0], [HALF, HALF])))
    assert abs(rep.residuals[1][0]) == 2
    assert not rep.all_interior
    g = random_game(random.Random(2), (3, 1, 2))
    rep = indifference_residuals(g, MixedProfile(([F(1, 3)] * 3, [1], [HALF, HALF])))
    assert rep.residuals[1] == ()
    assert rep.count == 2 + 0 + 1


def test_totally_mixed_examples():
    assert is_totally_mixed_equilibrium(PENNIES, MixedProfile.uniform((2, 2)))
    assert not is_totally_mixed_equilibrium(PENNIES, MixedProfile(([0.6, 0.4], [0.5, 0.5])), tol=1e-9)
    # zero residuals but a pure strategy is unused
    flat = Game((2, 2), (np.zeros((2, 2)), np.zeros((2, 2))))
    assert not is_totally_mixed_equilibrium(flat, MixedProfile(([1, 0], [HALF, HALF])))
    with pytest.raises(ValueError):
        is_totally_mixed_equilibrium(PENNIES, MixedProfile.uniform((2, 2)), tol=1e-9)


def test_profile_validation():
    with pytest.raises(ValueError):
        MixedProfile(([HALF, F(1, 3)],))
    with pytest.raises(ValueError):
        MixedProfile(([F(3, 2), F(-1, 2)],))
    with pytest.raises(ValueError):
        indifference_residuals(PENNIES, MixedProfile.uniform((3, 2)))
    assert MixedProfile(([1],)).is_interior()


def test_game_validation():
    with pytest.raises(ValueError):
        Game((2, 2), (np.zeros(3), np.zeros(4)))
    with pytest.raises(ValueError):
        Game((2, 0), (np.zeros(0), np.zeros(0)))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(0, 10**6))
def test_multilinearity(counts, seed):
    rng = random.Random(seed)
    g = random_game(rng, tuple(counts))
    p = random_interior_profile(rng, counts)
    q = random_interior_profile(rng, counts)
    lam = F(rng.randint(0, 7), 7)
    k = rng.randrange(len(counts))
    mix = [list(v) for v in p]
    mix[k] = [lam * a + (1 - lam) * b for a, b in zip(p[k], q[k])]
    other = [list(v) for v in p]
    other[k] = q[k]
    for i in range(len(counts)):
        lhs = expected_payoff(g, i, MixedProfile(tuple(mix)))
        rhs = lam * expected_payoff(g, i, MixedProfile(tuple(p))) + (1 - lam) * expected_payoff(
            g, i, MixedProfile(tuple(other))
        )
        assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(0, 10**6))
def test_convex_combination_identity(counts, seed):
    rng = random.Random(seed)
    g = random_game(rng, tuple(counts))
    prof = MixedProfile(tuple(random_interior_profile(rng, counts)))
    for i in range(len(counts)):
        total = sum(prof[i][j] * pure_vs_profile_payoff(g, i, j, prof) for j in range(counts[i]))
        assert total == expected_payoff(g, i, prof)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=2, max_size=3), st.integers(0, 10**6))
def test_residuals_invariant_under_translation(counts, seed):
    rng = random.Random(seed)
    g = random_game(rng, tuple(counts))
    shift = F(rng.randint(-9, 9), 4)
    i = rng.randrange(len(counts))
    moved = Game(g.strategy_counts, tuple(t + shift if k == i else t for k, t in enumerate(g.payoffs)))
    prof = MixedProfile(tuple(random_interior_profile(rng, counts)))
    assert indifference_residuals(g, prof) == indifference_residuals(moved, prof)


def test_float_mode_matches_exact():
    rng = random.Random(4)
    g = random_game(rng, (2, 3, 2))
    vecs = random_interior_profile(rng, (2, 3, 2))
    exact = indifference_residuals(g, MixedProfile(tuple(vecs))).flat()
    approx = indifference_residuals(g, MixedProfile(tuple([float(x) for x in v] for v in vecs))).flat()
    assert approx == pytest.approx([float(x) for x in exact], abs=1e-12)


# -- text formats ------------------------------------------------------------


def test_serialize_pennies():
    text = serialize_game(PENNIES)
    assert text == "players: 2\nstrategies: 2 2\npayoffs 1:\n1 -1\n-1 1\npayoffs 2:\n-1 1\n1 -1\n"
    assert deserialize_game(text) == PENNIES


def test_last_index_fastest():
    g = Game((2, 3), (np.arange(6).reshape(2, 3), np.zeros((2, 3))))
    lines = serialize_game(g).splitlines()
    assert lines[3:5] == ["0 1 2", "3 4 5"]
    parsed = deserialize_game("players: 2\nstrategies: 2 3\npayoffs 1: 0 1 2 3 4 5\npayoffs 2:\n0 0 0 0 0 0\n")
    assert parsed.payoffs[0][0, 2] == 2 and parsed.payoffs[0][1, 0] == 3


def test_serialization_round_trip_random():
    rng = random.Random(8)
    for _ in range(100):
        counts = tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 4)))
        g = random_game(rng, counts)
        assert deserialize_game(serialize_game(g)) == g


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("players: 2\nstrategies: 2 2\npayoffs 1:\n1 2 3\npayoffs 2:\n1 2 3 4\n", "expected 4"),
        ("players: 2\nstrategies: 2\n", "do not match"),
        ("strategies: 2\n", "players"),
        ("players: 1\nstrategies: 2\npayoffs 1:\n1 x\n", "bad rational"),
        ("players: 1\nstrategies: 1\npayoffs 1:\n0\nextra: 1\n", "trailing"),
    ],
)
def test_game_format_errors(text, fragment):
    with pytest.raises(GameFormatError, match=fragment):
        deserialize_game(text)


def test_profile_round_trip():
    prof = MixedProfile(([F(3, 4), F(1, 4)], [F(1, 3)] * 3))
    assert deserialize_profile(serialize_profile(prof)) == prof
    fl = deserialize_profile("players: 1\nplayer 1: 0.25 0.75\n")
    assert not fl.exact
