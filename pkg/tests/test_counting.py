from collections import Counter
from itertools import combinations

import pytest
from hypothesis import assume, given, settings, strategies as st

from wvgpower import counting, new_game
from wvgpower.counting import (
    brute_force_weight_card_counts,
    brute_force_weight_counts,
    build_weight_card_table,
    build_weight_table,
    card_table,
    count_in_range,
    count_table,
)
from wvgpower.errors import IndexOutOfRange, ResourceLimit, TooLarge


def enum_counts(weights):
    out = Counter()
    for r in range(len(weights) + 1):
        for c in combinations(weights, r):
            out[sum(c)] += 1
    return dict(out)


def test_excluding_the_big_player(backend):
    t = build_weight_table(new_game((2, 1, 1), 3), {1})
    assert t.as_dict() == {0: 1, 1: 2, 2: 1}
    assert t.players == (2, 3)


def test_empty_player_set(backend):
    assert build_weight_table(new_game([1], 1), {1}).as_dict() == {0: 1}


def test_power_set_size(backend):
    assert build_weight_table(new_game((2, 2, 4), 3)).total() == 2**3


def test_card_examples(backend):
    t = build_weight_card_table(new_game((2, 1, 1), 3), {1})
    assert t.as_dict() == {(0, 0): 1, (1, 1): 2, (2, 2): 1}
    g = new_game((3, 1, 4, 1, 5), 7)
    assert build_weight_card_table(g)[g.total_weight, g.n] == 1
    # brute force over the 8 subsets of three unit weights: C(3,2)
    assert build_weight_card_table(new_game((1, 1, 1, 1), 2), {4})[2, 2] == 3


def test_count_in_range_examples(backend):
    t = build_weight_table(new_game((2, 1, 1), 3), {1})
    assert count_in_range(t, 1, 2) == 3
    assert count_in_range(t, 2, 1) == 0
    assert count_in_range(t, -5, 0) == 1
    assert count_in_range(build_weight_table(new_game([1], 1), {1}), 0, 0) == 1


def test_worked_instance_counts():
    g = new_game((8, 8, 24, 17, 59, 48), 82)
    expected = enum_counts(g.weights)
    assert expected[80] == 2 and expected[81] == 1
    bf = brute_force_weight_counts(g)
    assert bf[80] == 2 and bf[81] == 1
    assert bf.as_dict() == expected


def test_brute_force_guard():
    g = new_game([1] * 26, 1)
    with pytest.raises(TooLarge):
        brute_force_weight_counts(g)
    assert brute_force_weight_counts(g, {26}).total() == 2**25


def test_index_validation():
    with pytest.raises(IndexOutOfRange):
        build_weight_table(new_game((1, 2), 1), {3})


def test_zero_weights_double_the_empty_stratum(backend):
    t = build_weight_table(new_game((0, 0, 3), 1))
    assert t.as_dict() == {0: 4, 3: 4}


def test_truncated_table_matches_prefix(backend):
    g = new_game((5, 3, 3, 2, 7), 9)
    full = build_weight_table(g)
    cut = build_weight_table(g, limit=9)
    assert all(cut[s] == full[s] for s in range(9))
    with pytest.raises(KeyError):
        cut[9]


def test_sparse_path_agrees_with_dense(backend):
    weights = [10**9, 3, 10**9 + 7, 5, 2 * 10**9]
    sparse = count_table(weights, max_cells=1000)
    assert not sparse.is_dense
    assert sparse.as_dict() == enum_counts(weights)
    ct = card_table(weights, max_cells=1000)
    assert not ct.is_dense
    assert ct.marginal().as_dict() == enum_counts(weights)


def test_sparse_cap_raises():
    with pytest.raises(ResourceLimit):
        count_table(list(range(1, 40)), max_cells=50)
    with pytest.raises(ResourceLimit):
        card_table(list(range(1, 40)), max_cells=50)


def test_compiled_backend_falls_back_past_63_items():
    weights = [1] * 70
    t = count_table(weights)
    assert t[35] == __import__("math").comb(70, 35)
    assert t.total() == 2**70


small_games = st.lists(st.integers(0, 12), min_size=1, max_size=10).filter(sum).flatmap(
    lambda ws: st.tuples(st.just(ws), st.integers(1, sum(ws)), st.sets(st.integers(1, len(ws)))))


@settings(max_examples=150, deadline=None)
@given(small_games)
def test_dp_equals_brute_force(args):
    weights, quota, excluded = args
    g = new_game(weights, quota)
    for name in counting.available_backends():
        with counting.use_backend(name):
            dp = build_weight_table(g, excluded)
            assert dp.as_dict() == brute_force_weight_counts(g, excluded).as_dict()
            assert dp.total() == 2 ** len(dp.players)
            ct = build_weight_card_table(g, excluded)
            assert ct.as_dict() == brute_force_weight_card_counts(g, excluded).as_dict()
            assert ct.marginal().as_dict() == dp.as_dict()
            assert ct[0, 0] == 1


@settings(max_examples=150, deadline=None)
@given(small_games, st.integers(1, 40), st.sampled_from([None, 40]))
def test_removal_equals_rebuild(args, limit, cap):
    weights, quota, _ = args
    g = new_game(weights, quota)
    kwargs = {"limit": limit} if cap is None else {"limit": limit, "max_cells": cap}
    for name in counting.available_backends():
        with counting.use_backend(name):
            full = build_weight_table(g, **kwargs)
            try:
                full_c = build_weight_card_table(g, **kwargs)
            except ResourceLimit:
                assume(False)
            for p in g.players:
                w = g.weights[p - 1]
                assert full.without(p, w) == build_weight_table(g, {p}, **kwargs)
                assert full_c.without(p, w) == build_weight_card_table(g, {p}, **kwargs)


def test_pure_python_is_selected_by_environment():
    import os
    import subprocess
    import sys
    env = dict(os.environ, WVGPOWER_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from wvgpower import counting; print(counting.get_backend())"],
                         env=env, capture_output=True, text=True, check=True).stdout
    assert out.strip() == "python"


def test_unknown_backend_is_rejected():
    with pytest.raises(ValueError):
        counting.set_backend("fortran")


@settings(max_examples=150, deadline=None)
@given(small_games, st.integers(1, 40), st.integers(-5, 45), st.integers(-5, 45))
def test_fused_window_queries_match_removal(args, limit, lo, hi):
    weights, quota, _ = args
    g = new_game(weights, quota)
    hi = min(hi, limit - 1)
    for name in counting.available_backends():
        with counting.use_backend(name):
            t = build_weight_table(g, limit=limit)
            ct = build_weight_card_table(g, limit=limit)
            for p in g.players:
                w = g.weights[p - 1]
                assert t.count_in_range_without(p, w, lo, hi) == t.without(p, w).count_in_range(lo, hi)
                fused = ct.window_by_cardinality_without(p, w, lo, hi)
                assert fused == ct.without(p, w).window_by_cardinality(lo, hi)


def test_huge_weight_removal_from_dense_table(backend):
    g = new_game((10**30, 2, 3), 4)
    t = build_weight_table(g, limit=4)
    assert t.without(1, 10**30).as_dict() == {0: 1, 2: 1, 3: 1}
    assert t.count_in_range_without(1, 10**30, 0, 3) == 3
    ct = build_weight_card_table(g, limit=4)
    assert ct.without(1, 10**30).as_dict() == {(0, 0): 1, (2, 1): 1, (3, 1): 1}
    assert ct.window_by_cardinality_without(1, 10**30, 2, 3) == [0, 2, 0]
