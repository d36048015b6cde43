# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset-counting kernels.

Same contract as ``_pykernels`` but cells are ``uint64``.  A table over
``k`` items never holds a count above ``2**k``, so the dispatcher only
routes here when ``k <= 63``.  Tables are returned as numpy arrays and
stay in that form, so repeated queries do not pay for conversions;
scalar results come back as Python ints.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t

cnp.import_array()


def subset_counts(weights, Py_ssize_t size):
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] arr = np.zeros(size, dtype=np.uint64)
    cdef uint64_t[::1] counts = arr
    cdef Py_ssize_t w, s, top = 0
    counts[0] = 1
    for item in weights:
        if item >= size:
            continue
        w = item
        with nogil:
            if w == 0:
                for s in range(top + 1):
                    counts[s] <<= 1
            else:
                top = min(top + w, size - 1)
                for s in range(top, w - 1, -1):
                    counts[s] += counts[s - w]
    return arr


def subset_card_counts(weights, Py_ssize_t size):
    cdef Py_ssize_t k = len(weights)
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] arr = np.zeros((k + 1, size), dtype=np.uint64)
    cdef uint64_t[:, ::1] rows = arr
    cdef Py_ssize_t w, s, c, seen = 0, top = 0
    rows[0, 0] = 1
    for item in weights:
        seen += 1
        if item >= size:
            continue
        w = item
        with nogil:
            top = min(top + w, size - 1)
            for c in range(seen, 0, -1):
                for s in range(top, w - 1, -1):
                    rows[c, s] += rows[c - 1, s - w]
    return arr


def remove_count(counts, Py_ssize_t w):
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] arr = np.array(counts, dtype=np.uint64)
    cdef uint64_t[::1] out = arr
    cdef Py_ssize_t s, size = arr.shape[0]
    if w >= size:
        return arr
    with nogil:
        if w == 0:
            for s in range(size):
                out[s] >>= 1
        else:
            for s in range(w, size):
                out[s] -= out[s - w]
    return arr


def remove_card_count(rows, Py_ssize_t w):
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] src_arr = np.ascontiguousarray(rows, dtype=np.uint64)
    cdef Py_ssize_t k = src_arr.shape[0] - 1
    cdef Py_ssize_t size = src_arr.shape[1]
    if w >= size:
        return src_arr[:k].copy()
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] arr = src_arr[:k].copy()
    cdef uint64_t[:, ::1] out = arr
    cdef Py_ssize_t c, s
    with nogil:
        for c in range(1, k):
            for s in range(w, size):
                out[c, s] -= out[c - 1, s - w]
    return arr


def window_without(counts, Py_ssize_t w, Py_ssize_t lo, Py_ssize_t hi):
    """``sum(remove_count(counts, w)[lo:hi + 1])`` without building the whole table."""
    cdef uint64_t[::1] src = np.ascontiguousarray(counts, dtype=np.uint64)
    cdef Py_ssize_t s, size = src.shape[0]
    hi = min(hi, size - 1)
    lo = max(lo, 0)
    if lo > hi:
        return 0
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] arr = np.empty(hi + 1, dtype=np.uint64)
    cdef uint64_t[::1] out = arr
    cdef uint64_t total = 0
    with nogil:
        for s in range(hi + 1):
            if w == 0:
                out[s] = src[s] >> 1
            elif s >= w:
                out[s] = src[s] - out[s - w]
            else:
                out[s] = src[s]
        for s in range(lo, hi + 1):
            total += out[s]
    return int(total)


def card_window_without(rows, Py_ssize_t w, Py_ssize_t lo, Py_ssize_t hi):
    """Per-cardinality window sums of ``remove_card_count(rows, w)``."""
    cdef uint64_t[:, ::1] src = np.ascontiguousarray(rows, dtype=np.uint64)
    cdef Py_ssize_t k = src.shape[0] - 1
    cdef Py_ssize_t size = src.shape[1]
    cdef Py_ssize_t c, s
    hi = min(hi, size - 1)
    lo = max(lo, 0)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] sums = np.zeros(k, dtype=np.uint64)
    if lo > hi:
        return sums.tolist()
    cdef uint64_t[::1] tot = sums
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] arr = np.empty((k, hi + 1), dtype=np.uint64)
    cdef uint64_t[:, ::1] out = arr
    with nogil:
        for c in range(k):
            for s in range(hi + 1):
                if c > 0 and s >= w:
                    out[c, s] = src[c, s] - out[c - 1, s - w]
                else:
                    out[c, s] = src[c, s]
            for s in range(lo, hi + 1):
                tot[c] += out[c, s]
    return sums.tolist()
