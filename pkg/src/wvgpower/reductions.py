"""Counting subset sums, the comparison chain, and the manipulation gadgets.

Chain of count-preserving steps::

    CompareInstance  --reduce_compare_to_r-->  CompareRInstance
                     --normalize_times8-->     CompareRInstance (all values = 0 mod 8)
                     --reduce_r_to_rr-->       RRInstance

An ``RRInstance`` ``A`` with even total ``alpha`` asks whether
``Y = #{A' : sum = alpha/2 - 2}`` beats ``X = #{A' : sum = alpha/2 - 1}``
(or the reverse when ``flipped``).  The gadget constructors turn it into
merge/split questions whose exact margins are closed-form in ``X`` and
``Y``; the ``verify_*`` functions compute both sides.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .counting import card_table, count_table
from .errors import BadPartCount, InvalidInstance, NotDivisibleBy8, OddTotal, WrongVariant
from .game import WeightedVotingGame, as_integer
from .indices import IndexFamily
from .manipulation import MergeSpec, is_beneficial_merge


def _positive_values(values) -> tuple[int, ...]:
    values = tuple(as_integer(v, "value") for v in values)
    bad = [v for v in values if v <= 0]
    if bad:
        raise InvalidInstance(f"values must be positive integers, got {bad}")
    return values


@dataclass(frozen=True)
class SubsetSumInstance:
    """``#{x in {0,1}^n : sum x_i a_i = target}`` with positive ``a_i`` and ``target >= 1``."""

    values: tuple[int, ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "values", _positive_values(self.values))
        target = as_integer(self.target, "target")
        if target < 1:
            raise InvalidInstance(f"target must be positive, got {target}")
        object.__setattr__(self, "target", target)

    @property
    def alpha(self) -> int:
        return sum(self.values)

    @property
    def in_range(self) -> bool:
        return 1 <= self.target <= self.alpha

    def to_json(self) -> dict:
        return {"values": list(self.values), "target": self.target}


@dataclass(frozen=True)
class CompareInstance:
    left: SubsetSumInstance
    right: SubsetSumInstance

    def __post_init__(self):
        for name, side in (("left", self.left), ("right", self.right)):
            if not side.in_range:
                raise InvalidInstance(f"{name} target {side.target} outside 1..{side.alpha}")

    def to_json(self) -> dict:
        return {"left": self.left.to_json(), "right": self.right.to_json()}


@dataclass(frozen=True)
class CompareRInstance:
    values: tuple[int, ...]
    q1: int
    q2: int

    def __post_init__(self):
        values = _positive_values(self.values)
        object.__setattr__(self, "values", values)
        alpha = sum(values)
        for name in ("q1", "q2"):
            q = as_integer(getattr(self, name), name)
            if not 1 <= q <= alpha:
                raise InvalidInstance(f"{name}={q} outside 1..{alpha}")
            object.__setattr__(self, name, q)

    @property
    def alpha(self) -> int:
        return sum(self.values)

    def to_json(self) -> dict:
        return {"values": list(self.values), "q1": self.q1, "q2": self.q2}


@dataclass(frozen=True)
class RRInstance:
    """Values with even total ``alpha >= 6``; targets ``alpha/2 - 2`` and ``alpha/2 - 1``."""

    values: tuple[int, ...]
    flipped: bool = False

    def __post_init__(self):
        values = _positive_values(self.values)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "flipped", bool(self.flipped))
        alpha = sum(values)
        if alpha % 2:
            raise OddTotal(f"total {alpha} is odd")
        if alpha < 6:
            raise InvalidInstance(f"total {alpha} is below 6, so alpha/2 - 2 < 1")

    @property
    def alpha(self) -> int:
        return sum(self.values)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def targets(self) -> tuple[int, int]:
        """``(alpha/2 - 2, alpha/2 - 1)``."""
        half = self.alpha // 2
        return half - 2, half - 1

    def to_json(self) -> dict:
        return {"values": list(self.values), "flipped": self.flipped}


@dataclass(frozen=True)
class ReductionCertificate:
    source: Any
    target: Any
    source_counts: tuple[int, ...] | None = None
    target_counts: tuple[int, ...] | None = None
    step: str = field(default="")

    @property
    def preserved(self) -> bool | None:
        if self.source_counts is None:
            return None
        return self.source_counts == self.target_counts

    def to_json(self) -> dict:
        def counts(c):
            return None if c is None else [str(x) for x in c]

        return {
            "step": self.step,
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "source_counts": counts(self.source_counts),
            "target_counts": counts(self.target_counts),
        }


# -- counting and deciding --------------------------------------------------------

def count_sums(values, targets, *, max_cells: int | None = None) -> tuple[int, ...]:
    """Number of subsets of ``values`` hitting each target (one shared table)."""
    targets = tuple(targets)
    table = count_table(values, limit=max(targets) + 1, max_cells=max_cells)
    return tuple(table[t] if t >= 0 else 0 for t in targets)


def count_subset_sum(inst: SubsetSumInstance, *, max_cells: int | None = None) -> int:
    return count_sums(inst.values, [inst.target], max_cells=max_cells)[0]


def count_by_size(values, target: int, *, max_cells: int | None = None) -> list[int]:
    """``out[c]`` = number of ``c``-element subsets summing to ``target``."""
    table = card_table(values, limit=target + 1, max_cells=max_cells)
    return table.window_by_cardinality(target, target)


def decide_compare(inst: CompareInstance, *, max_cells: int | None = None) -> bool:
    return count_subset_sum(inst.left, max_cells=max_cells) > count_subset_sum(inst.right, max_cells=max_cells)


def rr_counts(inst: RRInstance, *, max_cells: int | None = None) -> tuple[int, int]:
    """``(Y, X)``: solution counts for ``alpha/2 - 2`` and ``alpha/2 - 1``."""
    return count_sums(inst.values, inst.targets, max_cells=max_cells)


def decide_rr(inst: RRInstance, *, max_cells: int | None = None) -> bool:
    y, x = rr_counts(inst, max_cells=max_cells)
    return x > y if inst.flipped else y > x


# -- the chain --------------------------------------------------------------------

def reduce_compare_to_r(inst: CompareInstance, *, verify: bool = True,
                        max_cells: int | None = None) -> tuple[CompareRInstance, ReductionCertificate]:
    """Put both sides on one value list: the right side is scaled by ``2*alpha_left``.

    Left-side values sum to at most ``alpha_left``, so they can never make
    up a multiple of ``2*alpha_left`` on their own and the two targets
    keep their solution sets apart.
    """
    xs, ys = inst.left.values, inst.right.values
    alpha = sum(xs)
    scale = 2 * alpha
    out = CompareRInstance(xs + tuple(scale * y for y in ys), inst.left.target, scale * inst.right.target)
    cert = ReductionCertificate(inst, out, step="compare->r")
    if verify:
        cert = ReductionCertificate(
            inst, out,
            (count_subset_sum(inst.left, max_cells=max_cells), count_subset_sum(inst.right, max_cells=max_cells)),
            count_sums(out.values, (out.q1, out.q2), max_cells=max_cells),
            step="compare->r",
        )
    return out, cert


def normalize_times8(inst: CompareRInstance) -> CompareRInstance:
    return CompareRInstance(tuple(8 * a for a in inst.values), 8 * inst.q1, 8 * inst.q2)


def rr_extension(values, q1: int, q2: int) -> tuple[int, ...]:
    """The four extra values appended to ``values``; their total brings the sum to ``10*alpha + 4``."""
    alpha = sum(values)
    return (2 * alpha - q1, 2 * alpha + 1 - q2, 2 * alpha + 3 + q1 + q2, 3 * alpha)


def reduce_r_to_rr(inst: CompareRInstance, *, flipped: bool = False, verify: bool = True,
                   max_cells: int | None = None) -> tuple[RRInstance, ReductionCertificate]:
    """Build ``B`` with ``#(B, 5a) = #(A, q1)`` and ``#(B, 5a+1) = #(A, q2)``.

    With ``flipped=True`` the roles of ``q1`` and ``q2`` are exchanged and
    the result is marked flipped, so that deciding it answers the same
    question as the input.
    """
    if any(a % 8 for a in inst.values) or inst.q1 % 8 or inst.q2 % 8:
        raise NotDivisibleBy8("every value and target must be a multiple of 8; apply normalize_times8 first")
    first, second = (inst.q2, inst.q1) if flipped else (inst.q1, inst.q2)
    out = RRInstance(inst.values + rr_extension(inst.values, first, second), flipped=flipped)
    step = "r->rr-flipped" if flipped else "r->rr"
    if not verify:
        return out, ReductionCertificate(inst, out, step=step)
    src = count_sums(inst.values, (inst.q1, inst.q2), max_cells=max_cells)
    y, x = rr_counts(out, max_cells=max_cells)
    dst = (x, y) if flipped else (y, x)
    return out, ReductionCertificate(inst, out, src, dst, step=step)


def compare_to_rr(inst: CompareInstance, *, flipped: bool = False, verify: bool = True,
                  max_cells: int | None = None) -> tuple[RRInstance, list[ReductionCertificate]]:
    r, c1 = reduce_compare_to_r(inst, verify=verify, max_cells=max_cells)
    r8 = normalize_times8(r)
    c2 = ReductionCertificate(
        r, r8,
        count_sums(r.values, (r.q1, r.q2), max_cells=max_cells) if verify else None,
        count_sums(r8.values, (r8.q1, r8.q2), max_cells=max_cells) if verify else None,
        step="times8",
    )
    rr, c3 = reduce_r_to_rr(r8, flipped=flipped, verify=verify, max_cells=max_cells)
    return rr, [c1, c2, c3]


# -- gadgets -----------------------------------------------------------------------

def rr_to_banzhaf_merge(inst: RRInstance) -> tuple[WeightedVotingGame, MergeSpec]:
    """Game ``(2a_1..2a_n, 1, 1, 1, 1; alpha)``; merge three of the unit players."""
    if inst.flipped:
        raise WrongVariant("the merge gadget takes an unflipped instance")
    n = inst.n
    game = WeightedVotingGame(tuple(2 * a for a in inst.values) + (1, 1, 1, 1), inst.alpha)
    return game, MergeSpec({n + 2, n + 3, n + 4})


def rr_to_banzhaf_split(inst: RRInstance, m: int = 3) -> tuple[WeightedVotingGame, int, int]:
    """Game ``(2a_1..2a_n, 1, 3; alpha)``; split the weight-3 player into ``m`` identities.

    Only the three-way unit split can help; for ``m > 3`` the remaining
    identities get weight 0.
    """
    if not inst.flipped:
        raise WrongVariant("the split gadget takes a flipped instance")
    if m < 3:
        raise BadPartCount(f"the split gadget needs m >= 3, got {m}")
    n = inst.n
    game = WeightedVotingGame(tuple(2 * a for a in inst.values) + (1, 3), inst.alpha)
    return game, n + 2, m


def rr_to_shapley_merge(inst: RRInstance) -> tuple[WeightedVotingGame, MergeSpec]:
    """Game ``(a_1..a_n, 1, 1; alpha/2)``; merge the two unit players."""
    if inst.flipped:
        raise WrongVariant("the Shapley-Shubik merge gadget takes an unflipped instance")
    if inst.alpha % 2:
        raise OddTotal(f"total {inst.alpha} is odd")
    n = inst.n
    game = WeightedVotingGame(inst.values + (1, 1), inst.alpha // 2)
    return game, MergeSpec({n + 1, n + 2})


def banzhaf_merge_formula(inst: RRInstance, *, max_cells: int | None = None) -> Fraction:
    """Predicted merge margin ``(Y - X) / 2**(n+3)``."""
    y, x = rr_counts(inst, max_cells=max_cells)
    return Fraction(y - x, 1 << (inst.n + 3))


def shapley_merge_formula(inst: RRInstance, *, max_cells: int | None = None) -> Fraction:
    """Predicted merge margin, grouped by solution size.

    ``sum_k k!(n-k)!/(n+2)! * (n - 2k) * (Y_k - X_k)`` where ``Y_k`` and
    ``X_k`` count ``k``-element solutions for ``alpha/2 - 2`` and
    ``alpha/2 - 1``.  With a single solution size this is the familiar
    ``(n - 2k)(Y - X)`` form.
    """
    n = inst.n
    lo, hi = inst.targets
    table = card_table(inst.values, limit=hi + 1, max_cells=max_cells)
    y_k = table.window_by_cardinality(lo, lo)
    x_k = table.window_by_cardinality(hi, hi)
    fact = [math.factorial(j) for j in range(n + 1)]
    total = sum(fact[k] * fact[n - k] * (n - 2 * k) * (y_k[k] - x_k[k]) for k in range(n + 1))
    return Fraction(total, math.factorial(n + 2))


def verify_banzhaf_merge_identity(inst: RRInstance, *, max_cells: int | None = None) -> tuple[Fraction, Fraction]:
    """``(margin computed from the indices, margin predicted from counts)``."""
    game, spec = rr_to_banzhaf_merge(inst)
    direct = is_beneficial_merge(game, spec, IndexFamily.PROBABILISTIC_BANZHAF, max_cells=max_cells).margin
    return direct, banzhaf_merge_formula(inst, max_cells=max_cells)


def verify_shapley_merge_identity(inst: RRInstance, *, max_cells: int | None = None) -> tuple[Fraction, Fraction]:
    if inst.flipped:
        inst = RRInstance(inst.values)
    game, spec = rr_to_shapley_merge(inst)
    direct = is_beneficial_merge(game, spec, IndexFamily.SHAPLEY_SHUBIK, max_cells=max_cells).margin
    return direct, shapley_merge_formula(inst, max_cells=max_cells)
