"""Exact cover by 3-sets and its digit encoding into subset sum."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InvalidInstance, TooLarge
from .game import as_integer
from .reductions import ReductionCertificate, SubsetSumInstance, count_subset_sum

X3C_BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True)
class X3CInstance:
    """Base set ``{1..3k}`` and a family of 3-element subsets (repeats allowed)."""

    base_size: int
    family: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        base = as_integer(self.base_size, "base_size")
        if base < 3 or base % 3:
            raise InvalidInstance(f"base size must be a positive multiple of 3, got {base}")
        family = []
        for s in self.family:
            elems = tuple(sorted(as_integer(e, "element") for e in s))
            if len(elems) != 3 or len(set(elems)) != 3:
                raise InvalidInstance(f"{tuple(s)} is not a set of three distinct elements")
            if elems[0] < 1 or elems[-1] > base:
                raise InvalidInstance(f"{elems} has elements outside 1..{base}")
            family.append(elems)
        object.__setattr__(self, "base_size", base)
        object.__setattr__(self, "family", tuple(family))

    @property
    def k(self) -> int:
        return self.base_size // 3

    def to_json(self) -> dict:
        return {"base_size": self.base_size, "family": [list(s) for s in self.family]}


def count_x3c(inst: X3CInstance) -> int:
    """Number of subfamilies that cover the base set exactly, by enumeration."""
    if len(inst.family) > X3C_BRUTE_FORCE_LIMIT:
        raise TooLarge(f"{len(inst.family)} sets exceeds brute-force guard of {X3C_BRUTE_FORCE_LIMIT}")
    full = (1 << inst.base_size) - 1
    masks = [sum(1 << (e - 1) for e in s) for s in inst.family]
    count = 0
    # an exact cover of 3k elements by 3-sets uses exactly k of them
    for chosen in combinations(masks, inst.k):
        union = 0
        for m in chosen:
            if union & m:
                break
            union |= m
        else:
            count += union == full
    return count


def reduce_x3c_to_subsetsum(inst: X3CInstance, *, verify: bool = False) -> tuple[SubsetSumInstance, ReductionCertificate]:
    """Encode each set as a number with one base-``(|family|+1)`` digit per element.

    No digit can carry (at most ``|family|`` ones per position), so a
    subfamily hits the all-ones target iff it covers every element once.
    Every solution has exactly ``k`` members.
    """
    base = len(inst.family) + 1
    values = tuple(sum(base ** (e - 1) for e in s) for s in inst.family)
    target = sum(base ** b for b in range(inst.base_size))
    out = SubsetSumInstance(values, target)
    if not verify:
        return out, ReductionCertificate(inst, out, step="x3c->subsetsum")
    return out, ReductionCertificate(inst, out, (count_x3c(inst),), (count_subset_sum(out),), step="x3c->subsetsum")
