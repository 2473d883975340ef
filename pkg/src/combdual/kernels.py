"""Oracle kernel selection: compiled extension if importable, else the Python twin.

Set ``COMBDUAL_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py
if os.environ.get("COMBDUAL_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass


def components(indptr: np.ndarray, indices: np.ndarray, removed) -> tuple[np.ndarray, int]:
    return _impl.components(indptr, indices, np.ascontiguousarray(removed, dtype=np.uint8))


def pad_rows(rows: list[list[int]]) -> np.ndarray:
    width = max((len(r) for r in rows), default=0) or 1
    if width > 62:
        raise ValueError("candidate sets are limited to 62 vertices")
    out = np.full((len(rows), width), -1, dtype=np.int32)
    for i, r in enumerate(rows):
        out[i, : len(r)] = r
    return out


def subset_profile(indptr: np.ndarray, indices: np.ndarray, rows: list[list[int]], umask) -> np.ndarray:
    """Columns: component count, components meeting ``umask``, full-neighbourhood components."""
    if not rows:
        return np.zeros((0, 3), dtype=np.int32)
    return _impl.subset_profile(
        indptr, indices, pad_rows(rows), np.ascontiguousarray(umask, dtype=np.uint8)
    )
