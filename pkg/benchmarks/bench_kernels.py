#!/usr/bin/env python3
"""Benchmark the compiled scoring kernel against the NumPy fallback.

Times the interpolated-distribution kernel across vocabulary sizes, both
in isolation and through a realistic beam decode, and verifies the two
implementations stay bit-identical on every case it times.

Usage:
    python benchmarks/bench_kernels.py [--repeats 2000]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from versesmith.lm import _kernels_py

try:
    from versesmith.lm import _kernels as compiled
except ImportError:
    compiled = None


def synth_case(rng, vocab_size, order=4, rows_filled=3, row_len=24):
    uni = rng.integers(1, 50, vocab_size).astype(np.float64)
    weights = np.array([2.0 ** k for k in range(order)])
    weights /= weights.sum()
    rows = []
    for j in range(order - 1):
        if j >= rows_filled:
            rows.append(None)
            continue
        m = min(vocab_size, row_len)
        ids = np.sort(rng.choice(vocab_size, m, replace=False)).astype(np.int32)
        counts = rng.integers(1, 30, m).astype(np.float64)
        rows.append((np.ascontiguousarray(ids), counts, float(counts.sum())))
    return uni, float(uni.sum()), weights, rows


def time_impl(impl, case, repeats):
    uni, total, weights, rows = case
    out = np.empty(len(uni))
    impl.interpolated_distribution(uni, total, weights, rows, out)  # warm up
    t0 = time.perf_counter()
    for _ in range(repeats):
        impl.interpolated_distribution(uni, total, weights, rows, out)
    return (time.perf_counter() - t0) / repeats, out.copy()


def bench_kernel(repeats):
    rng = np.random.default_rng(0)
    print(f"{'vocab':>8} {'numpy':>12} {'cython':>12} {'speedup':>8}")
    for vocab_size in (50, 200, 1000, 5000, 20000, 100000):
        case = synth_case(rng, vocab_size)
        t_py, out_py = time_impl(_kernels_py, case, repeats)
        if compiled is None:
            print(f"{vocab_size:>8} {t_py * 1e6:>10.2f}us {'-':>12} {'-':>8}")
            continue
        t_cy, out_cy = time_impl(compiled, case, repeats)
        assert np.array_equal(out_py, out_cy), "backends diverged"
        print(f"{vocab_size:>8} {t_py * 1e6:>10.2f}us {t_cy * 1e6:>10.2f}us "
              f"{t_py / t_cy:>7.2f}x")


def bench_decode():
    """End-to-end beam decode with each backend forced in a subprocess."""
    import subprocess
    import sys

    code = r"""
import time
from versesmith.corpus import build_books_pairs, PairOrigin
from versesmith.fixtures import load_fixture
from versesmith.lm import fit, NgramConfig, beam_decode
from versesmith.lm.kernels import KERNEL_BACKEND
from versesmith.lm.ngram import high_order_weights

pairs = [p for p in build_books_pairs(load_fixture("tiny_books"))
         if p.origin is PairOrigin.BOOKS_RAW]
model = fit(pairs, NgramConfig(order=4, interpolation_weights=high_order_weights(4)))
beam_decode(model, "the miller kept", width=3)
t0 = time.perf_counter()
n = 200
for _ in range(n):
    beam_decode(model, "the miller kept his word", width=3)
print(f"{KERNEL_BACKEND}: {(time.perf_counter() - t0) / n * 1000:.2f} ms per decode")
"""
    for env_val in ("0", "1"):
        env = dict(**__import__("os").environ, VERSESMITH_PURE_PYTHON=env_val)
        out = subprocess.run([sys.executable, "-c", code], env=env,
                             capture_output=True, text=True)
        print(out.stdout.strip() or out.stderr.strip())


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=2000)
    args = parser.parse_args()
    if compiled is None:
        print("compiled kernel not available; timing the fallback only\n")
    print("== kernel microbenchmark ==")
    bench_kernel(args.repeats)
    print("\n== full beam decode (fixture-scale model) ==")
    bench_decode()


if __name__ == "__main__":
    main()
