from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from wvgpower import (
    IndexFamily,
    brute_force_banzhaf,
    brute_force_shapley,
    full_report,
    new_game,
    normalized_banzhaf,
    power,
    probabilistic_banzhaf,
    raw_banzhaf,
    raw_shapley_shubik,
    shapley_shubik,
)
from wvgpower.errors import IndexOutOfRange, TooLarge, ValidationError

G = new_game((2, 1, 1), 3)


def test_raw_banzhaf_examples(backend):
    assert [raw_banzhaf(G, i) for i in (1, 2, 3)] == [3, 1, 1]
    assert raw_banzhaf(new_game([1], 1), 1) == 1


def test_probabilistic_examples(backend):
    assert probabilistic_banzhaf(G, 1) == F(3, 4)
    assert probabilistic_banzhaf(new_game((1, 1), 2), 1) == F(1, 2)
    assert probabilistic_banzhaf(new_game((2, 1, 1, 0), 3), 4) == 0


def test_normalized_examples(backend):
    assert normalized_banzhaf(G, 1) == F(3, 5)
    assert normalized_banzhaf(new_game((1, 1), 2), 2) == F(1, 2)
    assert sum(normalized_banzhaf(G, i) for i in G.players) == 1


def test_shapley_examples(backend):
    assert [raw_shapley_shubik(G, i) for i in (1, 2, 3)] == [4, 1, 1]
    assert raw_shapley_shubik(new_game([1], 1), 1) == 1
    assert shapley_shubik(G, 1) == F(2, 3)
    assert shapley_shubik(new_game((1, 1), 2), 2) == F(1, 2)
    assert shapley_shubik(new_game((2, 1, 1, 0), 3), 4) == 0


def test_full_reports(backend):
    assert full_report(G, "shapley-shubik").values == (F(2, 3), F(1, 6), F(1, 6))
    rep = full_report(G, IndexFamily.PROBABILISTIC_BANZHAF)
    assert rep.values == (F(3, 4), F(1, 4), F(1, 4))
    assert rep.raw == (3, 1, 1)
    assert full_report(new_game((1, 1), 2), "normalized-banzhaf").values == (F(1, 2), F(1, 2))


def test_report_json():
    doc = full_report(G, "shapley-shubik").to_json()
    assert doc == {"family": "shapley-shubik", "values": ["2/3", "1/6", "1/6"], "raw": ["4", "1", "1"]}


def test_family_aliases():
    assert IndexFamily.parse("SS") is IndexFamily.SHAPLEY_SHUBIK
    assert IndexFamily.parse("raw") is IndexFamily.RAW_BANZHAF
    with pytest.raises(ValidationError):
        IndexFamily.parse("holler")


def test_oracle_examples():
    assert brute_force_shapley(G, 1) == F(2, 3)
    assert brute_force_shapley(new_game([1], 1), 1) == 1
    assert brute_force_banzhaf(G, 1) == F(3, 4)
    with pytest.raises(TooLarge):
        brute_force_shapley(new_game([1] * 10, 5), 1)


def test_index_errors():
    for fn in (raw_banzhaf, probabilistic_banzhaf, normalized_banzhaf, raw_shapley_shubik, shapley_shubik):
        with pytest.raises(IndexOutOfRange):
            fn(G, 4)
        with pytest.raises(IndexOutOfRange):
            fn(G, 0)


def test_workers_do_not_change_results(backend):
    g = new_game(tuple(range(1, 30)), 200)
    for fam in ("banzhaf", "shapley-shubik"):
        assert full_report(g, fam, workers=4) == full_report(g, fam)


def test_sparse_tables_give_the_same_indices(backend):
    # even weights leave gaps, so the sparse tables stay under the caps
    g = new_game((8, 6, 4, 4, 2, 2), 14)
    for fam, cap in (("banzhaf", 10), ("shapley-shubik", 60)):
        assert full_report(g, fam, max_cells=cap).values == full_report(g, fam).values


def test_huge_weights_use_the_sparse_path():
    big = 10**12
    g = new_game((3 * big, 2 * big, 2 * big, big), 4 * big)
    rep = full_report(g, "shapley-shubik")
    expected = [oracles.shapley(g.weights, g.quota, i) for i in range(4)]
    assert list(rep.values) == expected


games = st.lists(st.integers(0, 12), min_size=1, max_size=7).filter(sum).flatmap(
    lambda ws: st.tuples(st.just(ws), st.integers(1, sum(ws))))


@settings(max_examples=120, deadline=None)
@given(games)
def test_dp_agrees_with_independent_oracle(args):
    weights, quota = args
    g = new_game(weights, quota)
    bz = full_report(g, "banzhaf").values
    ss = full_report(g, "shapley-shubik").values
    for i in range(g.n):
        assert bz[i] == oracles.banzhaf(weights, quota, i)
        assert ss[i] == oracles.shapley(weights, quota, i)


@settings(max_examples=120, deadline=None)
@given(games)
def test_efficiency_range_and_normalization(args):
    g = new_game(*args)
    ss = full_report(g, "shapley-shubik").values
    assert sum(ss) == 1
    assert sum(full_report(g, "normalized-banzhaf").values) == 1
    for fam in ("banzhaf", "shapley-shubik", "normalized-banzhaf"):
        assert all(0 <= v <= 1 for v in full_report(g, fam).values)


@settings(max_examples=100, deadline=None)
@given(games)
def test_zero_weight_player_changes_nothing(args):
    weights, quota = args
    g = new_game(weights, quota)
    padded = new_game(list(weights) + [0], quota)
    for fam in ("banzhaf", "shapley-shubik"):
        before = full_report(g, fam).values
        after = full_report(padded, fam).values
        assert after[:-1] == before
        assert after[-1] == 0


@settings(max_examples=100, deadline=None)
@given(games)
def test_heavier_players_are_at_least_as_powerful(args):
    g = new_game(*args)
    for fam in ("banzhaf", "shapley-shubik"):
        vals = full_report(g, fam).values
        for i in range(g.n):
            for j in range(g.n):
                if g.weights[i] >= g.weights[j]:
                    assert vals[i] >= vals[j]


def test_every_small_game_efficiency():
    # exhaustive over all weight vectors in {0..3}^3 and every quota
    from itertools import product
    for ws in product(range(4), repeat=3):
        for q in range(1, sum(ws) + 1):
            g = new_game(ws, q)
            assert sum(full_report(g, "shapley-shubik").values) == 1
            assert [power(g, i, "ss") for i in g.players] == [brute_force_shapley(g, i) for i in g.players]
