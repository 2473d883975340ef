# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled oracle kernels over CSR adjacency arrays."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef int _label(const int[::1] indptr, const int[::1] indices,
                unsigned char[::1] removed, int[::1] labels, int[::1] stack) noexcept nogil:
    cdef Py_ssize_t n = labels.shape[0]
    cdef Py_ssize_t v, top, k
    cdef int u, w, comp = 0
    for v in range(n):
        labels[v] = -1
    for v in range(n):
        if removed[v] or labels[v] >= 0:
            continue
        labels[v] = comp
        stack[0] = <int>v
        top = 1
        while top:
            top -= 1
            u = stack[top]
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if not removed[w] and labels[w] < 0:
                    labels[w] = comp
                    stack[top] = w
                    top += 1
        comp += 1
    return comp


def components(const int[::1] indptr, const int[::1] indices, removed):
    """Label components of the graph minus ``removed``; returns (labels, count)."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef unsigned char[::1] rm = np.ascontiguousarray(removed, dtype=np.uint8)
    labels = np.empty(n, dtype=np.int32)
    stack = np.empty(max(n, 1), dtype=np.int32)
    cdef int[::1] lv = labels
    cdef int[::1] sv = stack
    cdef int count
    with nogil:
        count = _label(indptr, indices, rm, lv, sv)
    return labels, count


def subset_profile(const int[::1] indptr, const int[::1] indices,
                   const int[:, ::1] cands, umask):
    """Per candidate row (padded with -1): components, those meeting ``umask``,
    and those whose neighbourhood is the whole row."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t rows = cands.shape[0], width = cands.shape[1]
    cdef const unsigned char[::1] um = np.ascontiguousarray(umask, dtype=np.uint8)
    out_np = np.zeros((rows, 3), dtype=np.int32)
    cdef int[:, ::1] out = out_np
    cdef unsigned char[::1] removed = np.zeros(n, dtype=np.uint8)
    cdef int[::1] labels = np.empty(n, dtype=np.int32)
    cdef int[::1] stack = np.empty(max(n, 1), dtype=np.int32)
    cdef long long[::1] masks = np.zeros(max(n, 1), dtype=np.int64)
    cdef unsigned char[::1] meets = np.zeros(max(n, 1), dtype=np.uint8)
    cdef Py_ssize_t r, j, v, k, size
    cdef int x, c, count, full_count, meet_count
    cdef long long full
    with nogil:
        for r in range(rows):
            size = 0
            for j in range(width):
                x = cands[r, j]
                if x < 0:
                    break
                removed[x] = 1
                size += 1
            count = _label(indptr, indices, removed, labels, stack)
            for c in range(count):
                masks[c] = 0
                meets[c] = 0
            for v in range(n):
                c = labels[v]
                if c >= 0 and um[v]:
                    meets[c] = 1
            for j in range(size):
                x = cands[r, j]
                for k in range(indptr[x], indptr[x + 1]):
                    c = labels[indices[k]]
                    if c >= 0:
                        masks[c] |= (<long long>1) << j
            full = ((<long long>1) << size) - 1
            full_count = 0
            meet_count = 0
            for c in range(count):
                if size > 0 and masks[c] == full:
                    full_count += 1
                if meets[c]:
                    meet_count += 1
            out[r, 0] = count
            out[r, 1] = meet_count
            out[r, 2] = full_count
            for j in range(size):
                removed[cands[r, j]] = 0
    return out_np
