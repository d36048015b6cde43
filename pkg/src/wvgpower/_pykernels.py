"""Pure-Python subset-counting kernels (the fallback backend).

All kernels work on truncated tables: ``counts[s]`` for ``0 <= s < size``.
Items heavier than ``size - 1`` cannot reach a tracked cell and are
skipped.  Counts are Python ints, so there is no size restriction.

The compiled backend (``_ckernels``) implements the same functions
with identical semantics (its tables are numpy ``uint64`` arrays).
"""


def subset_counts(weights, size):
    """Number of subsets of ``weights`` with each sum ``s < size``."""
    counts = [0] * size
    counts[0] = 1
    for w in weights:
        if w >= size:
            continue
        counts[w:] = [a + b for a, b in zip(counts[w:], counts)]
    return counts


def subset_card_counts(weights, size):
    """Rows ``r[c][s]``: subsets of cardinality ``c`` and sum ``s < size``."""
    k = len(weights)
    rows = [[0] * size for _ in range(k + 1)]
    rows[0][0] = 1
    seen = 0
    for w in weights:
        seen += 1
        if w >= size:
            continue
        # descending cardinality so rows[c - 1] still holds the old values
        for c in range(seen, 0, -1):
            rows[c][w:] = [a + b for a, b in zip(rows[c][w:], rows[c - 1])]
    return rows


def remove_count(counts, w):
    """Undo one item of weight ``w`` from a table built by ``subset_counts``."""
    size = len(counts)
    if w >= size:
        return list(counts)
    if w == 0:
        return [c >> 1 for c in counts]
    out = list(counts)
    for s in range(w, size):
        out[s] -= out[s - w]
    return out


def remove_card_count(rows, w):
    """Undo one item of weight ``w``; the result has one row fewer."""
    size = len(rows[0])
    if w >= size:
        return [list(r) for r in rows[:-1]]
    out = [list(rows[0])]
    for c in range(1, len(rows) - 1):
        prev = out[c - 1]
        row = rows[c]
        out.append(row[:w] + [a - b for a, b in zip(row[w:], prev)])
    return out


def window_without(counts, w, lo, hi):
    """``sum(remove_count(counts, w)[lo:hi + 1])``, touching only cells up to ``hi``."""
    hi = min(hi, len(counts) - 1)
    lo = max(lo, 0)
    if lo > hi:
        return 0
    return sum(remove_count(counts[:hi + 1], w)[lo:])


def card_window_without(rows, w, lo, hi):
    """``out[c]``: window sum of row ``c`` of ``remove_card_count(rows, w)``."""
    hi = min(hi, len(rows[0]) - 1)
    lo = max(lo, 0)
    if lo > hi:
        return [0] * (len(rows) - 1)
    return [sum(r[lo:]) for r in remove_card_count([r[:hi + 1] for r in rows], w)]
