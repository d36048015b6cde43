"""Weighted voting games, coalitions and the win test.

Players are numbered 1..n inside the library.  The JSON layer converts
to and from 0-based positions.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    EmptyPlayerList,
    IndexOutOfRange,
    NegativeWeight,
    QuotaOutOfRange,
    ValidationError,
)


def as_integer(value, what: str = "value") -> int:
    """Coerce ``value`` to a Python int, refusing floats and bools."""
    if isinstance(value, bool):
        raise ValidationError(f"{what} must be an integer, got {value!r}")
    try:
        return operator.index(value)
    except TypeError:
        raise ValidationError(f"{what} must be an integer, got {value!r}") from None


@dataclass(frozen=True)
class WeightedVotingGame:
    """A game ``(w_1, ..., w_n; q)``.

    A coalition wins iff its total weight reaches the quota.  Construction
    enforces ``n >= 1``, nonnegative weights and ``0 < q <= w(N)`` so the
    empty coalition always loses and the grand coalition always wins.
    """

    weights: tuple[int, ...]
    quota: int

    def __post_init__(self):
        weights = tuple(as_integer(w, "weight") for w in self.weights)
        quota = as_integer(self.quota, "quota")
        if not weights:
            raise EmptyPlayerList("a game needs at least one player")
        for pos, w in enumerate(weights, start=1):
            if w < 0:
                raise NegativeWeight(f"player {pos} has negative weight {w}")
        total = sum(weights)
        if quota <= 0 or quota > total:
            raise QuotaOutOfRange(f"quota {quota} outside 1..{total}")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "quota", quota)

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    @property
    def players(self) -> range:
        return range(1, self.n + 1)

    def weight(self, player: int) -> int:
        return self.weights[check_player(self, player) - 1]

    def __str__(self):
        return "(" + ", ".join(map(str, self.weights)) + f"; {self.quota})"


def new_game(weights: Iterable[int], quota: int) -> WeightedVotingGame:
    return WeightedVotingGame(tuple(weights), quota)


def check_player(game: WeightedVotingGame, player: int) -> int:
    player = as_integer(player, "player")
    if not 1 <= player <= game.n:
        raise IndexOutOfRange(f"player {player} not in 1..{game.n}")
    return player


def coalition(game: WeightedVotingGame, members: Iterable[int]) -> frozenset[int]:
    """Validate ``members`` as a coalition of ``game`` (1-based, no repeats)."""
    members = [check_player(game, p) for p in members]
    result = frozenset(members)
    if len(result) != len(members):
        raise ValidationError(f"coalition has repeated players: {sorted(members)}")
    return result


def coalition_weight(game: WeightedVotingGame, members: Iterable[int]) -> int:
    return sum(game.weights[p - 1] for p in coalition(game, members))


def wins(game: WeightedVotingGame, members: Iterable[int]) -> bool:
    return coalition_weight(game, members) >= game.quota
