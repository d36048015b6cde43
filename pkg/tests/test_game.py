from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from wvgpower import coalition_weight, new_game, wins
from wvgpower.errors import (
    EmptyPlayerList,
    IndexOutOfRange,
    NegativeWeight,
    QuotaOutOfRange,
    ValidationError,
)


def test_minimal_game():
    g = new_game([1], 1)
    assert g.n == 1 and g.weights == (1,) and g.quota == 1


def test_valid_game():
    g = new_game((2, 1, 1), 3)
    assert g.total_weight == 4


@pytest.mark.parametrize("weights, quota, exc", [
    ((1, 1), 3, QuotaOutOfRange),
    ((1, 1), 0, QuotaOutOfRange),
    ((1, 1), -2, QuotaOutOfRange),
    ((1, -1, 3), 1, NegativeWeight),
    ((), 1, EmptyPlayerList),
    ((0, 0), 1, QuotaOutOfRange),
])
def test_invalid_games(weights, quota, exc):
    with pytest.raises(exc):
        new_game(weights, quota)


def test_rejects_non_integers():
    with pytest.raises(ValidationError):
        new_game((1.5, 2), 2)
    with pytest.raises(ValidationError):
        new_game((True, 2), 2)


def test_big_weights_are_exact():
    big = 10**40
    g = new_game((big, big + 1), 2 * big + 1)
    assert coalition_weight(g, {1, 2}) == 2 * big + 1
    assert wins(g, {1, 2}) and not wins(g, {2})


def test_coalition_weight_examples():
    g = new_game((2, 1, 1), 3)
    assert coalition_weight(g, {1, 3}) == 3
    assert coalition_weight(g, set()) == 0
    assert coalition_weight(new_game((8, 8, 24, 17, 59, 48), 82), {3, 6}) == 72


def test_wins_examples():
    g = new_game((2, 1, 1), 3)
    assert wins(g, {1, 2})
    assert not wins(g, {2, 3})
    assert wins(g, {1, 2, 3})


def test_index_errors():
    g = new_game((2, 1, 1), 3)
    with pytest.raises(IndexOutOfRange):
        coalition_weight(g, {4})
    with pytest.raises(IndexOutOfRange):
        wins(g, {0})
    with pytest.raises(ValidationError):
        coalition_weight(g, [1, 1])


games = st.lists(st.integers(0, 10), min_size=1, max_size=8).filter(sum).flatmap(
    lambda ws: st.tuples(st.just(ws), st.integers(1, sum(ws))))


@given(games)
def test_monotone_and_proper(game_args):
    g = new_game(*game_args)
    players = list(g.players)
    assert not wins(g, set())
    assert wins(g, players)
    for r in range(len(players) + 1):
        for c in combinations(players, r):
            if wins(g, c):
                for extra in players:
                    assert wins(g, set(c) | {extra})
