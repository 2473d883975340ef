"""Symbolic set algebra against pointwise membership on a finite window."""
from hypothesis import given
from hypothesis import strategies as st

from combdual.selectors import LevelSel, Sel
from combdual.vertices import fan_copy, graded_copy, kernel, spine
from combdual.vset import VSet

W = 10  # all selector data lives below 6, so 10 sees every distinction

sels = st.builds(Sel, st.booleans(), st.frozensets(st.integers(0, 5), max_size=4))
levelsels = st.builds(LevelSel.make, st.lists(sels, max_size=3), sels)
vsets = st.builds(
    VSet.make,
    st.frozensets(st.integers(0, 3)),
    sels,
    st.dictionaries(st.sampled_from([(0, 0), (1, 0)]), sels),
    st.dictionaries(st.sampled_from([(0, 0)]), levelsels),
)

UNIVERSE = (
    [kernel(i) for i in range(4)]
    + [spine(n) for n in range(W)]
    + [fan_copy(c, i, 0) for c in (0, 1) for i in range(W)]
    + [graded_copy(0, n, i, 0) for n in range(W) for i in range(W)]
)


def members(S):
    return {v for v in UNIVERSE if v in S}


def sel_members(s):
    return {i for i in range(W) if i in s}


@given(sels, sels)
def test_sel_algebra(a, b):
    assert sel_members(a | b) == sel_members(a) | sel_members(b)
    assert sel_members(a & b) == sel_members(a) & sel_members(b)
    assert sel_members(a - b) == sel_members(a) - sel_members(b)
    assert a.issubset(b) == (sel_members(a) <= sel_members(b))


@given(sels)
def test_sel_complement_and_json(a):
    assert sel_members(a.complement()) == set(range(W)) - sel_members(a)
    assert Sel.from_json(a.to_json()) == a
    assert a.is_finite() != a.cofinite


@given(levelsels, levelsels)
def test_levelsel_algebra(a, b):
    pts = [(n, i) for n in range(W) for i in range(W)]
    assert {p for p in pts if p in a | b} == {p for p in pts if p in a or p in b}
    assert {p for p in pts if p in a - b} == {p for p in pts if p in a and p not in b}
    assert a.issubset(b) == all(p in b for p in pts if p in a)
    assert LevelSel.from_json(a.to_json()) == a


@given(vsets, vsets)
def test_vset_algebra(A, B):
    assert members(A | B) == members(A) | members(B)
    assert members(A & B) == members(A) & members(B)
    assert members(A - B) == members(A) - members(B)
    assert A.issubset(B) == (members(A) <= members(B))
    assert A.isdisjoint(B) == members(A).isdisjoint(members(B))


@given(vsets)
def test_vset_json_and_of(A):
    assert VSet.from_json(A.to_json()) == A
    if A.is_finite():
        assert VSet.of(A.finite_members()) == A


def test_vset_of_normal_form():
    S = VSet.of([graded_copy(0, 2, 1, 0), spine(4), kernel(1)])
    assert S == VSet.make([1], Sel.only([4]), graded={(0, 0): LevelSel.at_level(2, Sel.only([1]))})
