"""Banzhaf and Shapley-Shubik indices, computed exactly.

A player ``i`` is pivotal for a coalition ``C`` not containing it when
``q - w_i <= w(C) <= q - 1``.  Every index here is a (weighted) count of
such coalitions read off a subset-count table truncated at the quota.

For whole-game reports one table over all players is built and each
player is *removed* from it (a linear deconvolution) instead of building
``n`` separate tables.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .counting import build_weight_card_table, build_weight_table
from .errors import TooLarge, ValidationError
from .game import WeightedVotingGame, check_player

SHAPLEY_BRUTE_FORCE_LIMIT = 9
BANZHAF_BRUTE_FORCE_LIMIT = 20


class IndexFamily(enum.Enum):
    RAW_BANZHAF = "raw-banzhaf"
    PROBABILISTIC_BANZHAF = "banzhaf"
    NORMALIZED_BANZHAF = "normalized-banzhaf"
    SHAPLEY_SHUBIK = "shapley-shubik"

    @classmethod
    def parse(cls, name: "str | IndexFamily") -> "IndexFamily":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "-")
        try:
            return _FAMILY_ALIASES[key]
        except KeyError:
            choices = ", ".join(sorted(_FAMILY_ALIASES))
            raise ValidationError(f"unknown index family {name!r} (choose from {choices})") from None


_FAMILY_ALIASES = {
    "raw-banzhaf": IndexFamily.RAW_BANZHAF,
    "raw": IndexFamily.RAW_BANZHAF,
    "banzhaf": IndexFamily.PROBABILISTIC_BANZHAF,
    "probabilistic-banzhaf": IndexFamily.PROBABILISTIC_BANZHAF,
    "normalized-banzhaf": IndexFamily.NORMALIZED_BANZHAF,
    "normalized": IndexFamily.NORMALIZED_BANZHAF,
    "shapley-shubik": IndexFamily.SHAPLEY_SHUBIK,
    "shapley": IndexFamily.SHAPLEY_SHUBIK,
    "ss": IndexFamily.SHAPLEY_SHUBIK,
}


@dataclass(frozen=True)
class PowerReport:
    """Per-player index values for one family.

    ``values[j] == raw[j] / denominator`` for every family; the
    denominator is ``2**(n-1)``, ``n!``, the raw Banzhaf total, or 1 for
    raw Banzhaf counts.
    """

    game: WeightedVotingGame
    family: IndexFamily
    raw: tuple[int, ...]
    values: tuple[Fraction, ...]
    denominator: int

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "values": [f"{v.numerator}/{v.denominator}" for v in self.values],
            "raw": [str(r) for r in self.raw],
        }


def _window(game: WeightedVotingGame, player: int) -> tuple[int, int]:
    return game.quota - game.weights[player - 1], game.quota - 1


# -- single-player entry points ---------------------------------------------

def raw_banzhaf(game: WeightedVotingGame, i: int, *, max_cells: int | None = None) -> int:
    """Number of coalitions without ``i`` for which ``i`` is pivotal."""
    i = check_player(game, i)
    table = build_weight_table(game, {i}, limit=game.quota, max_cells=max_cells)
    return table.count_in_range(*_window(game, i))


def probabilistic_banzhaf(game: WeightedVotingGame, i: int, *, max_cells: int | None = None) -> Fraction:
    return Fraction(raw_banzhaf(game, i, max_cells=max_cells), 1 << (game.n - 1))


def normalized_banzhaf(game: WeightedVotingGame, i: int, *, max_cells: int | None = None) -> Fraction:
    i = check_player(game, i)
    raws = raw_banzhaf_all(game, max_cells=max_cells)
    return Fraction(raws[i - 1], sum(raws))


def raw_shapley_shubik(game: WeightedVotingGame, i: int, *, max_cells: int | None = None) -> int:
    """``sum_C |C|! (n-1-|C|)!`` over coalitions ``C`` for which ``i`` is pivotal."""
    i = check_player(game, i)
    table = build_weight_card_table(game, {i}, limit=game.quota, max_cells=max_cells)
    fact = _factorials(game.n)
    by_size = table.window_by_cardinality(*_window(game, i))
    return sum(fact[c] * fact[game.n - 1 - c] * k for c, k in enumerate(by_size) if k)


def shapley_shubik(game: WeightedVotingGame, i: int, *, max_cells: int | None = None) -> Fraction:
    return Fraction(raw_shapley_shubik(game, i, max_cells=max_cells), math.factorial(game.n))


def _factorials(n: int) -> list[int]:
    fact = [1] * (n + 1)
    for k in range(1, n + 1):
        fact[k] = fact[k - 1] * k
    return fact


# -- whole-game computations ---------------------------------------------------

def _map(fn, items, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def raw_banzhaf_all(game: WeightedVotingGame, players: Iterable[int] | None = None, *,
                    max_cells: int | None = None, workers: int | None = None) -> list[int]:
    """Raw Banzhaf values for ``players`` (default: everyone), in that order."""
    players = list(game.players) if players is None else [check_player(game, p) for p in players]
    table = build_weight_table(game, limit=game.quota, max_cells=max_cells)

    def one(p):
        return table.count_in_range_without(p, game.weights[p - 1], *_window(game, p))

    return _map(one, players, workers)


def raw_shapley_shubik_all(game: WeightedVotingGame, players: Iterable[int] | None = None, *,
                           max_cells: int | None = None, workers: int | None = None) -> list[int]:
    players = list(game.players) if players is None else [check_player(game, p) for p in players]
    table = build_weight_card_table(game, limit=game.quota, max_cells=max_cells)
    n = game.n
    fact = _factorials(n)

    def one(p):
        by_size = table.window_by_cardinality_without(p, game.weights[p - 1], *_window(game, p))
        return sum(fact[c] * fact[n - 1 - c] * k for c, k in enumerate(by_size) if k)

    return _map(one, players, workers)


def raw_values(game: WeightedVotingGame, family: IndexFamily, players: Iterable[int] | None = None, *,
               max_cells: int | None = None, workers: int | None = None) -> list[int]:
    family = IndexFamily.parse(family)
    if family is IndexFamily.SHAPLEY_SHUBIK:
        return raw_shapley_shubik_all(game, players, max_cells=max_cells, workers=workers)
    return raw_banzhaf_all(game, players, max_cells=max_cells, workers=workers)


def full_report(game: WeightedVotingGame, family: "IndexFamily | str", *,
                max_cells: int | None = None, workers: int | None = None) -> PowerReport:
    family = IndexFamily.parse(family)
    raw = tuple(raw_values(game, family, max_cells=max_cells, workers=workers))
    n = game.n
    if family is IndexFamily.SHAPLEY_SHUBIK:
        denominator = math.factorial(n)
        # efficiency: exactly one pivot per ordering
        if sum(raw) != denominator:
            raise AssertionError(f"Shapley-Shubik raw values sum to {sum(raw)}, expected {n}!")
    elif family is IndexFamily.PROBABILISTIC_BANZHAF:
        denominator = 1 << (n - 1)
    elif family is IndexFamily.NORMALIZED_BANZHAF:
        denominator = sum(raw)
    else:
        denominator = 1
    values = tuple(Fraction(r, denominator) for r in raw)
    if family is IndexFamily.NORMALIZED_BANZHAF and sum(values) != 1:
        raise AssertionError("normalized Banzhaf values do not sum to 1")
    return PowerReport(game, family, raw, values, denominator)


def power(game: WeightedVotingGame, i: int, family: "IndexFamily | str", *,
          max_cells: int | None = None) -> Fraction:
    """One player's index value in the given family."""
    family = IndexFamily.parse(family)
    if family is IndexFamily.SHAPLEY_SHUBIK:
        return shapley_shubik(game, i, max_cells=max_cells)
    if family is IndexFamily.PROBABILISTIC_BANZHAF:
        return probabilistic_banzhaf(game, i, max_cells=max_cells)
    if family is IndexFamily.NORMALIZED_BANZHAF:
        return normalized_banzhaf(game, i, max_cells=max_cells)
    return Fraction(raw_banzhaf(game, i, max_cells=max_cells))


# -- brute-force oracles -------------------------------------------------------

def brute_force_raw_banzhaf(game: WeightedVotingGame, i: int) -> int:
    """Count pivotal coalitions by listing every ``C`` in ``N \\ {i}``."""
    i = check_player(game, i)
    if game.n > BANZHAF_BRUTE_FORCE_LIMIT:
        raise TooLarge(f"n={game.n} exceeds brute-force guard of {BANZHAF_BRUTE_FORCE_LIMIT}")
    others = [p for p in game.players if p != i]
    w, q = game.weights, game.quota
    count = 0
    for size in range(len(others) + 1):
        for c in combinations(others, size):
            base = sum(w[p - 1] for p in c)
            if base < q <= base + w[i - 1]:
                count += 1
    return count


def brute_force_banzhaf(game: WeightedVotingGame, i: int) -> Fraction:
    return Fraction(brute_force_raw_banzhaf(game, i), 1 << (game.n - 1))


def brute_force_shapley_all(game: WeightedVotingGame) -> list[Fraction]:
    """Shapley-Shubik values by walking all ``n!`` orderings."""
    n = game.n
    if n > SHAPLEY_BRUTE_FORCE_LIMIT:
        raise TooLarge(f"n={n} exceeds permutation guard of {SHAPLEY_BRUTE_FORCE_LIMIT}")
    w, q = game.weights, game.quota
    pivots = [0] * n
    for order in permutations(range(n)):
        running = 0
        for p in order:
            running += w[p]
            if running >= q:
                pivots[p] += 1
                break
    total = math.factorial(n)
    return [Fraction(k, total) for k in pivots]


def brute_force_shapley(game: WeightedVotingGame, i: int) -> Fraction:
    i = check_player(game, i)
    return brute_force_shapley_all(game)[i - 1]


def index_sum(game: WeightedVotingGame, players: Sequence[int], family: "IndexFamily | str", *,
              max_cells: int | None = None) -> Fraction:
    """Exact sum of the given players' index values."""
    family = IndexFamily.parse(family)
    if family is IndexFamily.NORMALIZED_BANZHAF:
        raws = raw_banzhaf_all(game, max_cells=max_cells)
        return Fraction(sum(raws[p - 1] for p in players), sum(raws))
    raws = raw_values(game, family, players, max_cells=max_cells)
    if family is IndexFamily.SHAPLEY_SHUBIK:
        return Fraction(sum(raws), math.factorial(game.n))
    if family is IndexFamily.PROBABILISTIC_BANZHAF:
        return Fraction(sum(raws), 1 << (game.n - 1))
    return Fraction(sum(raws))
