"""Independent enumeration oracles used only by the tests.

Nothing here touches the library's counting code: every quantity is
obtained by listing subsets or orderings with itertools.
"""
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial


def subsets(items):
    for r in range(len(items) + 1):
        yield from combinations(items, r)


def count_subsets_with_sum(values, target, size=None):
    idx = range(len(values))
    return sum(1 for c in subsets(idx)
               if sum(values[i] for i in c) == target and (size is None or len(c) == size))


def banzhaf(weights, quota, i):
    """Probabilistic Banzhaf of 0-based player ``i``."""
    others = [j for j in range(len(weights)) if j != i]
    swings = 0
    for c in subsets(others):
        s = sum(weights[j] for j in c)
        if s < quota <= s + weights[i]:
            swings += 1
    return Fraction(swings, 2 ** (len(weights) - 1))


def shapley(weights, quota, i):
    n = len(weights)
    hits = 0
    for order in permutations(range(n)):
        s = 0
        for p in order:
            s += weights[p]
            if s >= quota:
                hits += p == i
                break
    return Fraction(hits, factorial(n))


def x3c_covers(base_size, family):
    base = set(range(1, base_size + 1))
    count = 0
    for chosen in subsets(range(len(family))):
        elems = [e for j in chosen for e in family[j]]
        if len(elems) == len(set(elems)) and set(elems) == base:
            count += 1
    return count
