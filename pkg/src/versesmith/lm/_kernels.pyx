# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scoring kernel: interpolated next-token distributions.

Must stay arithmetically identical to ``_kernels_py`` (same operations in
the same order) so the two backends are interchangeable bit-for-bit.
"""

BACKEND = "cython"


def interpolated_distribution(double[::1] unigram, double unigram_total,
                              double[::1] weights, rows, double[::1] out):
    """Fill ``out`` with the interpolated next-token distribution.

    See ``_kernels_py.interpolated_distribution`` for the contract.
    """
    cdef Py_ssize_t V = unigram.shape[0]
    cdef Py_ssize_t K = weights.shape[0]
    cdef Py_ssize_t i, j, m
    cdef double active, scale, total
    cdef int[::1] ids
    cdef double[::1] counts

    active = weights[0] if unigram_total > 0 else 0.0
    for j in range(K - 1):
        if rows[j] is not None:
            active += weights[j + 1]

    if active <= 0.0:
        scale = 1.0 / unigram_total
        for i in range(V):
            out[i] = unigram[i] * scale
        return

    scale = (weights[0] / active) / unigram_total
    for i in range(V):
        out[i] = unigram[i] * scale

    for j in range(K - 1):
        row = rows[j]
        if row is None:
            continue
        ids = row[0]
        counts = row[1]
        total = row[2]
        scale = (weights[j + 1] / active) / total
        m = ids.shape[0]
        for i in range(m):
            out[ids[i]] = out[ids[i]] + counts[i] * scale
