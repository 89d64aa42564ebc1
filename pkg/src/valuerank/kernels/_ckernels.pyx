# cython: boundscheck=False, wraparound=False, cdivision=False
"""Compiled kernels. Same operations, same order, as ``_pykernels``."""

from cpython cimport array
from libc.math cimport log2
from libc.stdlib cimport free, malloc, qsort

import array

__all__ = ["weighted_sums", "tie_averaged_dcg", "plain_dcg"]


cpdef list weighted_sums(object utility, object usage, object currency, object objects,
                         double w_utility, double w_usage, double w_creation,
                         double w_objects):
    """Per-row weighted sum of the four dimension columns."""
    cdef array.array ua = array.array("d", utility)
    cdef array.array sa = array.array("d", usage)
    cdef array.array ca = array.array("d", currency)
    cdef array.array oa = array.array("d", objects)
    cdef double[::1] u = ua
    cdef double[::1] s = sa
    cdef double[::1] c = ca
    cdef double[::1] o = oa
    cdef Py_ssize_t i, n = u.shape[0]
    cdef list out = [0.0] * n
    for i in range(n):
        out[i] = w_utility * u[i] + w_usage * s[i] + w_creation * c[i] + w_objects * o[i]
    return out


cdef struct ScoredItem:
    double score
    Py_ssize_t index


cdef int _by_score_desc(const void* left, const void* right) noexcept nogil:
    # score descending, then original index ascending: the exact order a
    # stable reverse sort produces, so accumulation matches the pure twin
    cdef double a = (<const ScoredItem*>left).score
    cdef double b = (<const ScoredItem*>right).score
    if a < b:
        return 1
    if a > b:
        return -1
    if (<const ScoredItem*>left).index < (<const ScoredItem*>right).index:
        return -1
    return 1


cpdef double tie_averaged_dcg(object relevance, object scores, Py_ssize_t k):
    """Tie-averaged DCG; see the pure twin for the definition."""
    cdef array.array ra = array.array("d", relevance)
    cdef array.array sa = array.array("d", scores)
    cdef double[::1] rel = ra
    cdef double[::1] sc = sa
    cdef Py_ssize_t n = sc.shape[0]
    if n == 0:
        return 0.0
    cdef ScoredItem* items = <ScoredItem*>malloc(n * sizeof(ScoredItem))
    if items == NULL:
        raise MemoryError()
    cdef double total = 0.0
    cdef double rel_sum, disc
    cdef Py_ssize_t start = 0, stop, j, r, lim
    try:
        for j in range(n):
            items[j].score = sc[j]
            items[j].index = j
        qsort(items, n, sizeof(ScoredItem), _by_score_desc)
        while start < n:
            stop = start + 1
            while stop < n and items[stop].score == items[start].score:
                stop += 1
            rel_sum = 0.0
            for j in range(start, stop):
                rel_sum += rel[items[j].index]
            disc = 0.0
            lim = stop if stop < k else k
            for r in range(start, lim):
                disc += 1.0 / log2(r + 2.0)
            total += (rel_sum / (stop - start)) * disc
            start = stop
    finally:
        free(items)
    return total


cpdef double plain_dcg(object gains, Py_ssize_t k):
    """Discounted sum of ``gains`` in the given rank order, top k only.

    Multiplies by the reciprocal discount so a tie-free run accumulates
    bit-identically to the tie kernel's singleton groups.
    """
    cdef Py_ssize_t n = len(gains)
    cdef Py_ssize_t lim = n if n < k else k
    if lim <= 0:
        return 0.0
    cdef array.array ga = array.array("d", gains[:lim] if lim < n else gains)
    cdef double[::1] g = ga
    cdef double total = 0.0
    cdef Py_ssize_t r
    for r in range(lim):
        total += g[r] * (1.0 / log2(r + 2.0))
    return total
