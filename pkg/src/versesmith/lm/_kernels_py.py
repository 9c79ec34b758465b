"""NumPy implementation of the scoring kernel.

Selected at import time by ``kernels`` when the compiled extension is
missing or explicitly disabled. The arithmetic here mirrors the compiled
kernel operation-for-operation so both produce bit-identical outputs.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def interpolated_distribution(unigram, unigram_total, weights, rows, out):
    """Fill ``out`` with the interpolated next-token distribution.

    unigram: float64[V] unigram counts; unigram_total: their sum.
    weights: float64[K] interpolation weights, index 0 = unigram order.
    rows: K-1 entries for orders 2..K, each None (context unseen) or a
        tuple (token_ids int32[m], counts float64[m], context_total).
    Weights of unavailable orders are redistributed proportionally over
    the available ones, so the result sums to 1 exactly (up to float
    accumulation). If every active weight is zero the kernel falls back
    to the raw unigram estimate.
    """
    active = weights[0] if unigram_total > 0 else 0.0
    for j in range(len(weights) - 1):
        if rows[j] is not None:
            active += weights[j + 1]
    if active <= 0.0:
        np.multiply(unigram, 1.0 / unigram_total, out=out)
        return
    np.multiply(unigram, (weights[0] / active) / unigram_total, out=out)
    for j in range(len(weights) - 1):
        row = rows[j]
        if row is None:
            continue
        ids, counts, total = row
        out[ids] += counts * ((weights[j + 1] / active) / total)
