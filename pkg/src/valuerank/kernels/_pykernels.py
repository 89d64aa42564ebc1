"""Pure-Python kernels, used when the compiled extension is unavailable.

The compiled twin in ``_ckernels.pyx`` performs the same floating-point
operations in the same order, so both implementations return bit-identical
results.
"""

from __future__ import annotations

from math import log2
from typing import Sequence

__all__ = ["weighted_sums", "tie_averaged_dcg", "plain_dcg"]


def weighted_sums(
    utility: Sequence[float],
    usage: Sequence[float],
    currency: Sequence[float],
    objects: Sequence[float],
    w_utility: float,
    w_usage: float,
    w_creation: float,
    w_objects: float,
) -> list[float]:
    """Per-row weighted sum of the four dimension columns."""
    n = len(utility)
    out = [0.0] * n
    for i in range(n):
        out[i] = (
            w_utility * utility[i]
            + w_usage * usage[i]
            + w_creation * currency[i]
            + w_objects * objects[i]
        )
    return out


def tie_averaged_dcg(relevance: Sequence[float], scores: Sequence[float], k: int) -> float:
    """Discounted cumulative gain of ``relevance`` under the ranking induced
    by ``scores``, with tied scores sharing their group's mean relevance.

    Items are ranked by descending score. A maximal run of equal scores
    occupying ranks p..q contributes mean(relevance of the run) times the
    sum of the rank discounts 1/log2(r+1) for r in p..q, r <= k.
    """
    n = len(scores)
    order = sorted(range(n), key=scores.__getitem__, reverse=True)
    total = 0.0
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and scores[order[stop]] == scores[order[start]]:
            stop += 1
        rel_sum = 0.0
        for j in range(start, stop):
            rel_sum += relevance[order[j]]
        disc = 0.0
        for r in range(start, min(stop, k)):
            disc += 1.0 / log2(r + 2.0)
        total += (rel_sum / (stop - start)) * disc
        start = stop
    return total


def plain_dcg(gains: Sequence[float], k: int) -> float:
    """Discounted sum of ``gains`` taken in the given rank order, top k only.

    Multiplies by the reciprocal discount, the exact operation the tie
    kernel applies to singleton groups, so a run with no ties accumulates
    bit-identically here and there (NDCG of a perfect ranking is exactly 1).
    """
    total = 0.0
    for r in range(min(len(gains), k)):
        total += gains[r] * (1.0 / log2(r + 2.0))
    return total
