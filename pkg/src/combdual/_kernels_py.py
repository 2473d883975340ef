"""Pure-Python twins of the compiled oracle kernels (same signatures, same results)."""
from __future__ import annotations

import numpy as np


def _label(indptr, indices, removed, n):
    labels = [-1] * n
    comp = 0
    for v in range(n):
        if removed[v] or labels[v] >= 0:
            continue
        labels[v] = comp
        stack = [v]
        while stack:
            u = stack.pop()
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if not removed[w] and labels[w] < 0:
                    labels[w] = comp
                    stack.append(w)
        comp += 1
    return labels, comp


def components(indptr, indices, removed):
    n = len(indptr) - 1
    labels, count = _label(list(indptr), list(indices), [bool(x) for x in removed], n)
    return np.asarray(labels, dtype=np.int32), count


def subset_profile(indptr, indices, cands, umask):
    ip, ix = list(indptr), list(indices)
    n = len(ip) - 1
    um = [bool(x) for x in umask]
    out = np.zeros((len(cands), 3), dtype=np.int32)
    removed = [False] * n
    for r, row in enumerate(cands):
        xs = [int(x) for x in row if x >= 0]
        for x in xs:
            removed[x] = True
        labels, count = _label(ip, ix, removed, n)
        masks = [0] * count
        meets = [False] * count
        for v in range(n):
            if labels[v] >= 0 and um[v]:
                meets[labels[v]] = True
        for j, x in enumerate(xs):
            for k in range(ip[x], ip[x + 1]):
                c = labels[ix[k]]
                if c >= 0:
                    masks[c] |= 1 << j
        full = (1 << len(xs)) - 1
        out[r, 0] = count
        out[r, 1] = sum(meets)
        out[r, 2] = sum(1 for m in masks if xs and m == full)
        for x in xs:
            removed[x] = False
    return out
