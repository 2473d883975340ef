import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combdual import _kernels_py, kernels

compiled = pytest.importorskip("combdual._kernels")


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 12))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=20)) if pairs else []
    nb = [[] for _ in range(n)]
    for a, b in edges:
        nb[a].append(b)
        nb[b].append(a)
    indptr = np.zeros(n + 1, dtype=np.int32)
    indptr[1:] = np.cumsum([len(x) for x in nb])
    indices = np.array([w for x in nb for w in x], dtype=np.int32)
    return n, indptr, indices


@settings(max_examples=80, deadline=None)
@given(graphs(), st.data())
def test_compiled_matches_python(g, data):
    n, indptr, indices = g
    removed = np.array(data.draw(st.lists(st.booleans(), min_size=n, max_size=n)), dtype=np.uint8)
    la, ca = compiled.components(indptr, indices, removed)
    lb, cb = _kernels_py.components(indptr, indices, removed)
    assert ca == cb and list(la) == list(lb)
    rows = [list(X) for r in (1, 2) for X in itertools.combinations(range(n), r)][:40]
    umask = np.array(data.draw(st.lists(st.booleans(), min_size=n, max_size=n)), dtype=np.uint8)
    cand = kernels.pad_rows(rows)
    assert (compiled.subset_profile(indptr, indices, cand, umask) == _kernels_py.subset_profile(indptr, indices, cand, umask)).all()


def test_path_profile():
    # path 0-1-2-3: deleting 1 leaves {0} and {2,3}, both seeing 1
    indptr = np.array([0, 1, 3, 5, 6], dtype=np.int32)
    indices = np.array([1, 0, 2, 1, 3, 2], dtype=np.int32)
    out = kernels.subset_profile(indptr, indices, [[1], [1, 2]], np.array([1, 0, 0, 1], dtype=np.uint8))
    assert out.tolist() == [[2, 2, 2], [2, 2, 0]]


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_wide_rows_refused():
    with pytest.raises(ValueError):
        kernels.pad_rows([list(range(63))])
