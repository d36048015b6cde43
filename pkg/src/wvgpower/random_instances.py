"""Seeded random instance generators for batch verification."""
from __future__ import annotations

import random

from .game import WeightedVotingGame
from .reductions import CompareInstance, RRInstance, SubsetSumInstance
from .x3c import X3CInstance


def random_game(rng: random.Random, max_n: int = 9, max_weight: int = 12,
                zero_weight_prob: float = 0.1) -> WeightedVotingGame:
    while True:
        n = rng.randint(1, max_n)
        weights = [0 if rng.random() < zero_weight_prob else rng.randint(1, max_weight) for _ in range(n)]
        total = sum(weights)
        if total:
            return WeightedVotingGame(tuple(weights), rng.randint(1, total))


def random_rr(rng: random.Random, max_n: int = 8, max_value: int = 12, flipped: bool = False) -> RRInstance:
    while True:
        values = [rng.randint(1, max_value) for _ in range(rng.randint(1, max_n))]
        total = sum(values)
        if total % 2 == 0 and total >= 6:
            return RRInstance(tuple(values), flipped)


def random_subset_sum(rng: random.Random, max_n: int = 7, max_value: int = 10) -> SubsetSumInstance:
    values = [rng.randint(1, max_value) for _ in range(rng.randint(1, max_n))]
    # bias targets toward the middle, where counts are largest
    total = sum(values)
    target = rng.randint(1, total) if rng.random() < 0.3 else max(1, round(rng.triangular(1, total, total / 2)))
    return SubsetSumInstance(tuple(values), target)


def random_compare(rng: random.Random, max_n: int = 7, max_value: int = 10) -> CompareInstance:
    return CompareInstance(random_subset_sum(rng, max_n, max_value), random_subset_sum(rng, max_n, max_value))


def random_x3c(rng: random.Random, k: int | None = None, max_k: int = 3, max_sets: int = 10,
               cover_all: bool = False) -> X3CInstance:
    """A random family of 3-subsets; ``cover_all`` forces every element to appear."""
    k = rng.randint(1, max_k) if k is None else k
    base = 3 * k
    while True:
        family = []
        # plant an exact cover half of the time so positive counts are common
        if rng.random() < 0.5:
            elems = list(range(1, base + 1))
            rng.shuffle(elems)
            family += [tuple(elems[3 * j:3 * j + 3]) for j in range(k)]
        size = rng.randint(max(1, len(family)), max(max_sets, len(family)))
        while len(family) < size:
            family.append(tuple(rng.sample(range(1, base + 1), 3)))
        rng.shuffle(family)
        covered = {e for s in family for e in s}
        if not cover_all or len(covered) == base:
            return X3CInstance(base, tuple(family))
