"""Merging players, splitting a player, and the beneficial-manipulation checks.

The merged player of ``G&S`` is placed first and the remaining players keep
their relative order.  A split inserts its parts where the original
player stood.  Both conventions only permute players, which no index here
is sensitive to.

Comparisons are made on integer numerators over a common denominator
(a power of two for probabilistic Banzhaf, a factorial for
Shapley-Shubik) so no rounding can creep in.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Iterable, Iterator

from .errors import BadPartCount, EmptyCoalition, ResourceLimit, ValidationError, WeightMismatch
from .game import WeightedVotingGame, as_integer, check_player, coalition
from .indices import IndexFamily, raw_banzhaf_all, raw_values

DEFAULT_MAX_PARTITIONS = int(os.environ.get("WVGPOWER_MAX_PARTITIONS", 10**6))


@dataclass(frozen=True)
class MergeSpec:
    coalition: frozenset[int]

    def __init__(self, members: Iterable[int]):
        members = list(members)
        if not members:
            raise EmptyCoalition("cannot merge the empty coalition")
        object.__setattr__(self, "coalition", frozenset(members))
        if len(self.coalition) != len(members):
            raise ValidationError(f"coalition has repeated players: {sorted(members)}")


@dataclass(frozen=True)
class SplitSpec:
    player: int
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(as_integer(p, "part weight") for p in self.parts)
        if len(parts) < 2:
            raise BadPartCount(f"a split needs at least 2 parts, got {len(parts)}")
        if any(p < 0 for p in parts):
            raise ValidationError(f"part weights must be nonnegative: {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "player", as_integer(self.player, "player"))


@dataclass(frozen=True)
class ManipulationVerdict:
    """Outcome of one merge or split comparison.

    ``margin = after - before``; ``beneficial`` is the strict test
    ``margin > 0``.  ``witness`` holds the split part weights when the
    verdict came from a split evaluation or search.
    """

    beneficial: bool
    margin: Fraction
    before: Fraction
    after: Fraction
    witness: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        return {
            "beneficial": self.beneficial,
            "margin": _fmt(self.margin),
            "witness": list(self.witness) if self.witness is not None else None,
            "before": _fmt(self.before),
            "after": _fmt(self.after),
        }


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# -- transformations -----------------------------------------------------------

def merge(game: WeightedVotingGame, spec: "MergeSpec | Iterable[int]") -> WeightedVotingGame:
    if not isinstance(spec, MergeSpec):
        spec = MergeSpec(spec)
    members = coalition(game, spec.coalition)
    merged = sum(game.weights[p - 1] for p in members)
    rest = [game.weights[p - 1] for p in game.players if p not in members]
    return WeightedVotingGame((merged, *rest), game.quota)


def split(game: WeightedVotingGame, spec: SplitSpec) -> WeightedVotingGame:
    i = check_player(game, spec.player)
    if sum(spec.parts) != game.weights[i - 1]:
        raise WeightMismatch(f"parts {spec.parts} sum to {sum(spec.parts)}, player {i} has weight {game.weights[i - 1]}")
    w = game.weights
    return WeightedVotingGame((*w[:i - 1], *spec.parts, *w[i:]), game.quota)


# -- exact comparison ------------------------------------------------------------

def _power_terms(game, players, family, max_cells):
    """Unreduced ``(numerator, denominator)`` of the summed power of ``players``."""
    if family is IndexFamily.NORMALIZED_BANZHAF:
        raws = raw_banzhaf_all(game, max_cells=max_cells)
        return sum(raws[p - 1] for p in players), sum(raws)
    num = sum(raw_values(game, family, players, max_cells=max_cells))
    if family is IndexFamily.PROBABILISTIC_BANZHAF:
        return num, 1 << (game.n - 1)
    if family is IndexFamily.SHAPLEY_SHUBIK:
        return num, _factorial(game.n)
    return num, 1


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _verdict(family, before, after, witness=None) -> ManipulationVerdict:
    (nb, db), (na, da) = before, after
    if family is IndexFamily.NORMALIZED_BANZHAF:
        num, den = na * db - nb * da, da * db
    else:
        # powers of two, factorials and 1 all divide the larger of the two
        den = max(da, db)
        num = na * (den // da) - nb * (den // db)
    return ManipulationVerdict(num > 0, Fraction(num, den), Fraction(nb, db), Fraction(na, da), witness)


def is_beneficial_merge(game: WeightedVotingGame, spec: "MergeSpec | Iterable[int]",
                        family: "IndexFamily | str", *, max_cells: int | None = None) -> ManipulationVerdict:
    """Does the merged player hold strictly more power than its members did?

    For normalized Banzhaf this is a plain exact comparison; the hardness
    results that motivate the other two families say nothing about it.
    """
    family = IndexFamily.parse(family)
    if not isinstance(spec, MergeSpec):
        spec = MergeSpec(spec)
    members = sorted(coalition(game, spec.coalition))
    merged = merge(game, spec)
    before = _power_terms(game, members, family, max_cells)
    after = _power_terms(merged, [1], family, max_cells)
    return _verdict(family, before, after)


def evaluate_split(game: WeightedVotingGame, spec: SplitSpec, family: "IndexFamily | str", *,
                   max_cells: int | None = None, _before=None) -> ManipulationVerdict:
    """Compare the identities' summed power after one fixed split against the original."""
    family = IndexFamily.parse(family)
    i = check_player(game, spec.player)
    new_game = split(game, spec)
    identities = range(i, i + len(spec.parts))
    before = _before if _before is not None else _power_terms(game, [i], family, max_cells)
    after = _power_terms(new_game, identities, family, max_cells)
    return _verdict(family, before, after, witness=spec.parts)


# -- split search -------------------------------------------------------------------

def enumerate_partitions(w: int, max_parts: int) -> Iterator[tuple[int, ...]]:
    """Partitions of ``w`` into at most ``max_parts`` positive parts.

    Each partition is a non-increasing tuple; they come out in
    lexicographically decreasing order, e.g. ``(3), (2, 1), (1, 1, 1)``.
    ``w == 0`` yields only the empty partition.
    """
    if w < 0 or max_parts < 1:
        raise ValidationError(f"need w >= 0 and max_parts >= 1, got w={w}, max_parts={max_parts}")
    if w == 0:
        yield ()
        return
    parts = [w]
    while True:
        yield tuple(parts)
        suffix = 0
        for j in range(len(parts) - 1, -1, -1):
            v = parts[j] - 1
            rest = suffix + 1
            if v >= 1 and rest <= v * (max_parts - j - 1):
                q, r = divmod(rest, v)
                parts = parts[:j] + [v] + [v] * q + ([r] if r else [])
                break
            suffix += parts[j]
        else:
            return


def count_partitions(w: int, max_parts: int) -> int:
    """Number of partitions of ``w`` into at most ``max_parts`` positive parts."""
    # conjugation: at most k parts <-> every part at most k
    ways = [1] + [0] * w
    for part in range(1, min(max_parts, w) + 1):
        for s in range(part, w + 1):
            ways[s] += ways[s - part]
    return ways[w]


def search_beneficial_split(game: WeightedVotingGame, i: int, m: int, family: "IndexFamily | str", *,
                            exhaustive: bool = False, max_partitions: int | None = None,
                            max_cells: int | None = None, workers: int | None = None) -> ManipulationVerdict:
    """Look for a weight assignment over ``m`` identities that helps player ``i``.

    Only positive parts matter: zero-weight identities change nobody's
    power, so every candidate is a partition of ``w_i`` into at most
    ``min(m, w_i)`` positive parts, padded with zeros to length ``m``.

    Returns the first beneficial witness in enumeration order, or with
    ``exhaustive=True`` the best margin overall (earliest on ties).  When
    nothing helps, the verdict carries the best (non-positive) margin seen.
    """
    family = IndexFamily.parse(family)
    i = check_player(game, i)
    m = as_integer(m, "m")
    if m < 2:
        raise BadPartCount(f"m must be at least 2, got {m}")
    cap = DEFAULT_MAX_PARTITIONS if max_partitions is None else max_partitions
    w = game.weights[i - 1]
    kmax = max(1, min(m, w))
    total = count_partitions(w, kmax)
    if total > cap:
        raise ResourceLimit(f"{total} candidate partitions exceed the cap of {cap}")

    before = _power_terms(game, [i], family, max_cells)

    def evaluate(partition):
        parts = partition + (0,) * (m - len(partition))
        return evaluate_split(game, SplitSpec(i, parts), family, max_cells=max_cells, _before=before)

    best = None
    for verdict in _ordered_map(evaluate, enumerate_partitions(w, kmax), workers):
        if verdict.beneficial and not exhaustive:
            return verdict
        if best is None or verdict.margin > best.margin:
            best = verdict
    return best


def _ordered_map(fn, items, workers):
    """Lazy map; with ``workers`` it evaluates in ordered batches."""
    if not workers or workers <= 1:
        yield from map(fn, items)
        return
    items = iter(items)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        while batch := list(islice(items, 4 * workers)):
            yield from pool.map(fn, batch)
