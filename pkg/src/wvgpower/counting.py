"""Exact subset counting by total weight (and cardinality).

Tables come in two storage flavours chosen per call:

* dense: a list indexed by weight sum, filled by a kernel backend
  (compiled ``uint64`` kernels when available and safe, otherwise pure
  Python ints);
* sparse: a dict of reachable sums only, used when the dense table would
  exceed ``max_cells`` but few sums are actually reachable (gadget games
  built from reduction chains have huge weights but few players).

Either way the counts are exact integers.  A table may be *truncated*
with ``limit``: sums ``>= limit`` are simply not tracked.  Index
computations only ever look below the quota, so they build truncated
tables.
"""
from __future__ import annotations

import os
from collections import Counter
from contextlib import contextmanager
from typing import Iterable, Iterator, Sequence

from . import _pykernels
from .errors import ResourceLimit, TooLarge
from .game import WeightedVotingGame, check_player

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

DEFAULT_MAX_CELLS = int(os.environ.get("WVGPOWER_MAX_CELLS", 10**7))
BRUTE_FORCE_LIMIT = 25
# a table over k items holds counts <= 2**k, which fits uint64 for k <= 63
_UINT64_ITEMS = 63

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels

if os.environ.get("WVGPOWER_PURE_PYTHON") or _ckernels is None:
    _active = "python"
else:
    _active = "cython"


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def get_backend() -> str:
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {available_backends()}")
    _active = name


@contextmanager
def use_backend(name: str):
    previous = _active
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def _kernel(nitems: int):
    if _active == "cython" and nitems <= _UINT64_ITEMS:
        return _ckernels
    return _pykernels


def _native(kernel, data):
    """``data`` in the form ``kernel`` works on (compiled tables are numpy arrays)."""
    if kernel is _pykernels and hasattr(data, "tolist"):
        return data.tolist()
    return data


def _plain(data):
    return data.tolist() if hasattr(data, "tolist") else data


def _resolve_cap(max_cells):
    return DEFAULT_MAX_CELLS if max_cells is None else max_cells


class WeightCountTable:
    """Counts of subsets of ``players`` by weight sum.

    ``table[s]`` is the number of subsets with sum ``s``.  When ``limit``
    is set only sums below it are tracked and reading beyond raises.
    """

    __slots__ = ("players", "limit", "_native", "_list", "_sparse")

    def __init__(self, players, *, dense=None, sparse=None, limit=None):
        self.players = tuple(players)
        self.limit = limit
        self._native = dense
        self._list = None
        self._sparse = sparse

    @property
    def _dense(self):
        if self._list is None and self._native is not None:
            self._list = _plain(self._native)
        return self._list

    @property
    def is_dense(self) -> bool:
        return self._native is not None

    def __getitem__(self, s: int) -> int:
        if self.limit is not None and s >= self.limit:
            raise KeyError(f"sum {s} beyond truncation limit {self.limit}")
        if s < 0:
            return 0
        if self._dense is not None:
            return self._dense[s] if s < len(self._dense) else 0
        return self._sparse.get(s, 0)

    def items(self) -> Iterator[tuple[int, int]]:
        """Nonzero ``(sum, count)`` pairs in increasing sum order."""
        if self._dense is not None:
            return ((s, c) for s, c in enumerate(self._dense) if c)
        return iter(sorted((s, c) for s, c in self._sparse.items() if c))

    def as_dict(self) -> dict[int, int]:
        return dict(self.items())

    def total(self) -> int:
        if self._dense is not None:
            return sum(self._dense)
        return sum(self._sparse.values())

    def count_in_range(self, lo: int, hi: int) -> int:
        lo = max(lo, 0)
        if lo > hi:
            return 0
        if self.limit is not None and hi >= self.limit:
            raise KeyError(f"window up to {hi} beyond truncation limit {self.limit}")
        if self._dense is not None:
            return sum(self._dense[lo:hi + 1])
        return sum(c for s, c in self._sparse.items() if lo <= s <= hi)

    def without(self, player: int, weight: int) -> "WeightCountTable":
        """The table for ``players`` minus ``player`` (which has ``weight``)."""
        rest = tuple(p for p in self.players if p != player)
        if len(rest) == len(self.players):
            raise KeyError(f"player {player} not in table")
        if self._native is not None:
            kernel = _kernel(len(self.players))
            # anything at or past the table size is untracked; clamp so it fits a C index
            dense = kernel.remove_count(_native(kernel, self._native), min(weight, len(self._native)))
            return WeightCountTable(rest, dense=dense, limit=self.limit)
        return WeightCountTable(rest, sparse=_sparse_remove(self._sparse, weight), limit=self.limit)

    def count_in_range_without(self, player: int, weight: int, lo: int, hi: int) -> int:
        """``self.without(player, weight).count_in_range(lo, hi)``, computed only up to ``hi``."""
        if self._native is None or player not in self.players:
            return self.without(player, weight).count_in_range(lo, hi)
        lo = max(lo, 0)
        if lo > hi:
            return 0
        if self.limit is not None and hi >= self.limit:
            raise KeyError(f"window up to {hi} beyond truncation limit {self.limit}")
        kernel = _kernel(len(self.players))
        size = len(self._native)
        return kernel.window_without(_native(kernel, self._native), min(weight, size), lo, min(hi, size - 1))

    def __eq__(self, other):
        if not isinstance(other, WeightCountTable):
            return NotImplemented
        return (self.players, self.limit, self.as_dict()) == (other.players, other.limit, other.as_dict())

    __hash__ = None

    def __repr__(self):
        return f"WeightCountTable(players={self.players}, counts={self.as_dict()}, limit={self.limit})"


class WeightCardTable:
    """Counts of subsets by ``(weight sum, cardinality)``; ``table[s, c]``."""

    __slots__ = ("players", "limit", "_native", "_list", "_sparse")

    def __init__(self, players, *, rows=None, sparse=None, limit=None):
        self.players = tuple(players)
        self.limit = limit
        self._native = rows
        self._list = None
        self._sparse = sparse

    @property
    def _rows(self):
        if self._list is None and self._native is not None:
            self._list = _plain(self._native)
        return self._list

    @property
    def is_dense(self) -> bool:
        return self._native is not None

    def __getitem__(self, key: tuple[int, int]) -> int:
        s, c = key
        if self.limit is not None and s >= self.limit:
            raise KeyError(f"sum {s} beyond truncation limit {self.limit}")
        if s < 0 or c < 0 or c > len(self.players):
            return 0
        if self._rows is not None:
            row = self._rows[c]
            return row[s] if s < len(row) else 0
        return self._sparse.get((s, c), 0)

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        if self._rows is not None:
            return (((s, c), v) for c, row in enumerate(self._rows) for s, v in enumerate(row) if v)
        return iter(sorted((k, v) for k, v in self._sparse.items() if v))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.items())

    def total(self) -> int:
        return sum(v for _, v in self.items())

    def marginal(self) -> WeightCountTable:
        counts: dict[int, int] = {}
        for (s, _), v in self.items():
            counts[s] = counts.get(s, 0) + v
        return WeightCountTable(self.players, sparse=counts, limit=self.limit)

    def window_by_cardinality(self, lo: int, hi: int) -> list[int]:
        """``out[c]`` = number of subsets of size ``c`` with ``lo <= sum <= hi``."""
        k = len(self.players)
        lo = max(lo, 0)
        out = [0] * (k + 1)
        if lo > hi:
            return out
        if self.limit is not None and hi >= self.limit:
            raise KeyError(f"window up to {hi} beyond truncation limit {self.limit}")
        if self._rows is not None:
            for c, row in enumerate(self._rows):
                out[c] = sum(row[lo:hi + 1])
        else:
            for (s, c), v in self._sparse.items():
                if lo <= s <= hi:
                    out[c] += v
        return out

    def without(self, player: int, weight: int) -> "WeightCardTable":
        rest = tuple(p for p in self.players if p != player)
        if len(rest) == len(self.players):
            raise KeyError(f"player {player} not in table")
        if self._native is not None:
            kernel = _kernel(len(self.players))
            rows = kernel.remove_card_count(_native(kernel, self._native), min(weight, len(self._native[0])))
            return WeightCardTable(rest, rows=rows, limit=self.limit)
        return WeightCardTable(rest, sparse=_sparse_card_remove(self._sparse, weight), limit=self.limit)

    def window_by_cardinality_without(self, player: int, weight: int, lo: int, hi: int) -> list[int]:
        """``self.without(player, weight).window_by_cardinality(lo, hi)`` without the full table."""
        if self._native is None or player not in self.players:
            return self.without(player, weight).window_by_cardinality(lo, hi)
        lo = max(lo, 0)
        if lo > hi:
            return [0] * len(self.players)
        if self.limit is not None and hi >= self.limit:
            raise KeyError(f"window up to {hi} beyond truncation limit {self.limit}")
        kernel = _kernel(len(self.players))
        size = len(self._native[0])
        return kernel.card_window_without(_native(kernel, self._native), min(weight, size), lo, min(hi, size - 1))

    def __eq__(self, other):
        if not isinstance(other, WeightCardTable):
            return NotImplemented
        return (self.players, self.limit, self.as_dict()) == (other.players, other.limit, other.as_dict())

    __hash__ = None

    def __repr__(self):
        return f"WeightCardTable(players={self.players}, counts={self.as_dict()}, limit={self.limit})"


# -- sparse DP ---------------------------------------------------------------

def _sparse_counts(weights, limit, cap):
    counts = {0: 1}
    for w in weights:
        if limit is not None and w >= limit:
            continue
        new = dict(counts)
        for s, c in counts.items():
            t = s + w
            if limit is None or t < limit:
                new[t] = new.get(t, 0) + c
        counts = new
        if len(counts) > cap:
            raise ResourceLimit(f"more than {cap} reachable sums; raise max_cells to continue")
    return counts


def _sparse_card_counts(weights, limit, cap):
    counts = {(0, 0): 1}
    for w in weights:
        if limit is not None and w >= limit:
            continue
        new = dict(counts)
        for (s, k), c in counts.items():
            t = s + w
            if limit is None or t < limit:
                key = (t, k + 1)
                new[key] = new.get(key, 0) + c
        counts = new
        if len(counts) > cap:
            raise ResourceLimit(f"more than {cap} reachable (sum, size) cells; raise max_cells to continue")
    return counts


def _sparse_remove(counts, w):
    if w == 0:
        return {s: c >> 1 for s, c in counts.items()}
    out = {}
    for s in sorted(counts):
        v = counts[s] - out.get(s - w, 0)
        if v:
            out[s] = v
    return out


def _sparse_card_remove(counts, w):
    out = {}
    for s, k in sorted(counts):
        v = counts[s, k] - out.get((s - w, k - 1), 0)
        if v:
            out[s, k] = v
    return out


# -- builders ----------------------------------------------------------------

def _size(weights, limit):
    full = sum(weights) + 1
    return full if limit is None else max(1, min(limit, full))


def count_table(weights: Sequence[int], players: Iterable[int] | None = None, *,
                limit: int | None = None, max_cells: int | None = None) -> WeightCountTable:
    """Subset counts for an explicit weight list (players default to 1..k)."""
    weights = list(weights)
    players = tuple(range(1, len(weights) + 1)) if players is None else tuple(players)
    cap = _resolve_cap(max_cells)
    size = _size(weights, limit)
    if size <= cap:
        dense = _kernel(len(weights)).subset_counts(weights, size)
        return WeightCountTable(players, dense=dense, limit=limit)
    return WeightCountTable(players, sparse=_sparse_counts(weights, limit, cap), limit=limit)


def card_table(weights: Sequence[int], players: Iterable[int] | None = None, *,
               limit: int | None = None, max_cells: int | None = None) -> WeightCardTable:
    weights = list(weights)
    players = tuple(range(1, len(weights) + 1)) if players is None else tuple(players)
    cap = _resolve_cap(max_cells)
    size = _size(weights, limit)
    if size * (len(weights) + 1) <= cap:
        rows = _kernel(len(weights)).subset_card_counts(weights, size)
        return WeightCardTable(players, rows=rows, limit=limit)
    return WeightCardTable(players, sparse=_sparse_card_counts(weights, limit, cap), limit=limit)


def _remaining(game: WeightedVotingGame, excluded):
    excluded = {check_player(game, p) for p in excluded}
    players = [p for p in game.players if p not in excluded]
    return players, [game.weights[p - 1] for p in players]


def build_weight_table(game: WeightedVotingGame, excluded: Iterable[int] = (), *,
                       limit: int | None = None, max_cells: int | None = None) -> WeightCountTable:
    """Subset counts by weight over ``N \\ excluded``."""
    players, weights = _remaining(game, excluded)
    return count_table(weights, players, limit=limit, max_cells=max_cells)


def build_weight_card_table(game: WeightedVotingGame, excluded: Iterable[int] = (), *,
                            limit: int | None = None, max_cells: int | None = None) -> WeightCardTable:
    players, weights = _remaining(game, excluded)
    return card_table(weights, players, limit=limit, max_cells=max_cells)


def count_in_range(table: WeightCountTable, lo: int, hi: int) -> int:
    return table.count_in_range(lo, hi)


# -- brute-force oracles -----------------------------------------------------

def enumerate_subset_sums(values: Sequence[int]) -> list[int]:
    """The sum of every one of the ``2**k`` subsets, listed explicitly."""
    if len(values) > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"{len(values)} items exceeds brute-force guard of {BRUTE_FORCE_LIMIT}")
    sums = [0]
    for v in values:
        sums += [s + v for s in sums]
    return sums


def enumerate_subset_sums_by_size(values: Sequence[int]) -> list[tuple[int, int]]:
    if len(values) > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"{len(values)} items exceeds brute-force guard of {BRUTE_FORCE_LIMIT}")
    cells = [(0, 0)]
    for v in values:
        cells += [(s + v, c + 1) for s, c in cells]
    return cells


def brute_force_weight_counts(game: WeightedVotingGame, excluded: Iterable[int] = ()) -> WeightCountTable:
    players, weights = _remaining(game, excluded)
    return WeightCountTable(players, sparse=dict(Counter(enumerate_subset_sums(weights))))


def brute_force_weight_card_counts(game: WeightedVotingGame, excluded: Iterable[int] = ()) -> WeightCardTable:
    players, weights = _remaining(game, excluded)
    return WeightCardTable(players, sparse=dict(Counter(enumerate_subset_sums_by_size(weights))))
