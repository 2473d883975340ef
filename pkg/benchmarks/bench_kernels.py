"""Compiled versus pure-Python oracle kernels on the exhaustive critical-set sweep.

    python3 benchmarks/bench_kernels.py [--depth 8] [--copies 5] [--size 4]
"""
from __future__ import annotations

import argparse
import itertools
import time

import numpy as np

from combdual import _kernels_py
from combdual.kernels import pad_rows
from combdual.presentation import load_bundled
from combdual.truncation import materialize_truncation

try:
    from combdual import _kernels
except ImportError:  # pragma: no cover
    _kernels = None


def sweep(impl, T, size: int, limit: int | None) -> tuple[float, int]:
    rows = [list(X) for r in range(1, size + 1) for X in itertools.combinations(range(T.n), r)]
    if limit:
        rows = rows[:limit]
    indptr, indices = T.csr
    cand = pad_rows(rows)
    umask = np.zeros(T.n, dtype=np.uint8)
    t = time.perf_counter()
    out = impl.subset_profile(indptr, indices, cand, umask)
    return time.perf_counter() - t, int((out[:, 2] >= T.copies).sum())


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--instance", default="INST-PAPER")
    ap.add_argument("--depth", type=int, default=8)
    ap.add_argument("--copies", type=int, default=5)
    ap.add_argument("--size", type=int, default=4)
    ap.add_argument("--python-limit", type=int, default=20000, help="rows timed on the Python kernel")
    a = ap.parse_args()
    P, _ = load_bundled(a.instance)
    T = materialize_truncation(P, a.depth, a.copies)
    total = sum(len(list(itertools.combinations(range(T.n), r))) for r in range(1, a.size + 1))
    print(f"{a.instance} d={a.depth} m={a.copies}: {T.n} vertices, {total} subsets of size <= {a.size}")
    py_t, _ = sweep(_kernels_py, T, a.size, a.python_limit)
    py_rate = min(total, a.python_limit) / py_t
    print(f"python  {py_rate:12.0f} subsets/s  (full sweep ~{total / py_rate:.1f}s, extrapolated)")
    if _kernels is None:
        print("cython  not built")
        return
    cy_t, crit = sweep(_kernels, T, a.size, None)
    print(f"cython  {total / cy_t:12.0f} subsets/s  (full sweep {cy_t:.2f}s, {crit} critical)")
    print(f"speed-up {py_t / min(total, a.python_limit) * total / cy_t:.0f}x")


if __name__ == "__main__":
    main()
