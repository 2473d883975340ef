import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combdual.admissible import build_principal_tree_set
from combdual.errors import InconsistentOrientation, MixedPresentation
from combdual.presentation import instance_from_dict, instance_to_dict
from combdual.rules import rule_instance
from combdual.selectors import LevelSel, Sel
from combdual.separations import (
    CROSSING,
    EQ,
    GE,
    LE,
    NESTED,
    compare,
    corridors,
    invert,
    is_star,
    join,
    le,
    lessish,
    make_sep,
    maximum,
    meet,
    orientation_by,
    part_of,
    supremum,
    tameness_problem,
    validity_problem,
    verify_tree_set,
)
from combdual.vertices import kernel, spine
from combdual.vset import VSet

K = [kernel(i) for i in range(3)]


def levels(P, n):
    """All copies of the graded class at levels 0..n, with separator X(n)."""
    small = VSet.make(graded={(0, 0): LevelSel.make([Sel.all()] * (n + 1), Sel.none())})
    return make_sep(P, [spine(i) for i in range(n + 1)], small)


def fan_small(**copies):
    return VSet.make(fan={(int(k[1:]), 0): v for k, v in copies.items()})


def test_prefix_chain_compare(prefix):
    P, _ = prefix
    assert compare(levels(P, 0), levels(P, 1)) == LE
    assert compare(levels(P, 1), levels(P, 0)) == GE
    assert compare(levels(P, 2), levels(P, 2)) == EQ


def test_fan2_class_separations_nested(fan2):
    P, _ = fan2
    s = make_sep(P, K[:2], fan_small(c0=Sel.all()))
    r = make_sep(P, K[1:], fan_small(c1=Sel.all()))
    assert compare(s, r) == NESTED
    assert le(s, invert(r))
    assert is_star([s, r]) is None


def test_crossing_pair(fan2):
    P, _ = fan2
    s = make_sep(P, K[:2], fan_small(c0=Sel.only([0, 1])))
    r = make_sep(P, K[:2], fan_small(c0=Sel.only([1, 2])))
    assert compare(s, r) == CROSSING
    rep = verify_tree_set([s, r], ["s", "r"])
    assert not rep.nested and "crossing pair s / r" in rep.violations


def test_mixed_presentations(prefix, ray):
    with pytest.raises(MixedPresentation):
        le(levels(prefix[0], 0), levels(ray[0], 0))


def test_meet_and_join(prefix):
    P, _ = prefix
    a, b = levels(P, 1), levels(P, 3)
    assert meet(a, b) == a and join(a, b) == b


def test_small_element_not_regular(fan2):
    P, _ = fan2
    s = make_sep(P, K, VSet.empty())
    rep = verify_tree_set([s, invert(s)])
    assert rep.no_trivial and not rep.regular


def test_principal_tree_set_prefix(prefix):
    # full-neighbourhood reading: member n keeps only the level-n bundle
    P, U = prefix
    _, F = build_principal_tree_set(P, U)
    seps = [m.sep for m in F.instances(6)]
    assert verify_tree_set(seps).ok
    for n, s in enumerate(seps[:7]):
        assert s.sep == levels(P, n).sep
        assert s.small == VSet.make(graded={(0, 0): LevelSel.at_level(n, Sel.all())})
    assert is_star(seps) is None


def test_all_components_family_is_the_chain(prefix):
    P, U = prefix
    seps = [rule_instance(P, U, {"rule": "Kall", "family": 0}, n) for n in range(5)]
    assert seps == [levels(P, n) for n in range(5)]
    assert verify_tree_set(seps).ok


def test_part_of_chain_is_spine(prefix):
    P, _ = prefix
    part = part_of(P, [levels(P, n) for n in range(4)])
    assert part.restricted_levels(3) == VSet.make(spine=Sel.all()).restricted_levels(3)
    assert part_of(P, []) == P.universe


def test_corridors_prefix_chain(prefix):
    P, _ = prefix
    O = [levels(P, n) for n in range(3)]
    assert corridors(O, 3) == [[0, 1, 2]]
    assert corridors(O, 2) == [[0, 1]]
    assert supremum(O) == O[2] and maximum(O) == 2
    assert corridors([], 3) == []


def test_corridors_fan2(fan2):
    P, _ = fan2
    O = [make_sep(P, K[:2], fan_small(c0=Sel.all())), make_sep(P, K[1:], fan_small(c1=Sel.all()))]
    assert corridors(O, 2) == [[0], [1]]
    assert supremum(O[:1]) == O[0]


def test_corridors_reject_inconsistent(fan2):
    P, _ = fan2
    s = make_sep(P, K[:2], fan_small(c0=Sel.all()))
    with pytest.raises(InconsistentOrientation):
        corridors([s, invert(s)], 2)


def test_lessish(fan2):
    P, _ = fan2
    r = make_sep(P, K, fan_small(c0=Sel.all()))
    one_extra = make_sep(P, K, fan_small(c0=Sel.all(), c1=Sel.only([0])))
    all_extra = make_sep(P, K, fan_small(c0=Sel.all(), c1=Sel.all()))
    assert lessish(r, r)
    assert not le(one_extra, r) and lessish(one_extra, r)
    assert not lessish(all_extra, r)


def test_lessish_prefix_leaf(prefix):
    P, _ = prefix
    n = 2
    leaf = levels(P, n)
    extra = make_sep(P, leaf.sep, leaf.small | VSet.make(graded={(0, 0): LevelSel.at_level(n, Sel.only([3]))}))
    assert extra == leaf  # level n copies are already inside
    assert lessish(levels(P, n - 1), leaf)


def twin_fan(fan1):
    P, U = fan1
    doc = instance_to_dict(P, U)
    doc["fanClasses"].append(dict(doc["fanClasses"][0]))
    return instance_from_dict(doc)[0]


def test_tameness(fan1):
    P = twin_fan(fan1)
    tame = make_sep(P, K[:2], fan_small(c0=Sel.all(), c1=Sel.all()))
    wild = make_sep(P, K[:2], fan_small(c0=Sel.all()))
    assert tameness_problem(tame) is None
    assert "on both sides" in tameness_problem(wild)


def test_orientation_by(prefix):
    P, _ = prefix
    s = levels(P, 3)
    assert orientation_by(s, frozenset(spine(i) for i in range(2))) == "small"
    assert orientation_by(s, frozenset(spine(i) for i in range(6))) == "big"


def test_validity(fan2):
    P, _ = fan2
    assert validity_problem(make_sep(P, K[:2], fan_small(c0=Sel.all()))) is None
    assert validity_problem(make_sep(P, K[:1], fan_small(c0=Sel.all()))) is not None


copysel = st.one_of(
    st.builds(Sel.only, st.frozensets(st.integers(0, 4), max_size=3)),
    st.builds(Sel.all_but, st.frozensets(st.integers(0, 4), max_size=3)),
)


@st.composite
def fan2_seps(draw):
    from combdual.presentation import load_bundled

    P, _ = load_bundled("INST-FAN2")
    small = fan_small(c0=draw(copysel), c1=draw(copysel))
    sep = K
    if draw(st.booleans()):
        k = draw(st.sampled_from([0, 2]))
        small = small | VSet.make([k])
        sep = [v for v in K if v != kernel(k)]
    return make_sep(P, sep, small)


@settings(max_examples=60, deadline=None)
@given(fan2_seps(), fan2_seps())
def test_order_axioms(s, r):
    assert invert(invert(s)) == s
    assert le(s, r) == le(invert(r), invert(s))
    assert compare(s, s) == EQ
    c, d = compare(s, r), compare(r, s)
    assert (c, d) in {(LE, GE), (GE, LE), (EQ, EQ), (NESTED, NESTED), (CROSSING, CROSSING)}
    m = meet(s, r)
    assert le(m, s) and le(m, r)
    j = join(s, r)
    assert le(s, j) and le(r, j)
    if le(s, r):
        assert lessish(s, r)


@settings(max_examples=40, deadline=None)
@given(fan2_seps(), fan2_seps(), fan2_seps())
def test_le_transitive(a, b, c):
    if le(a, b) and le(b, c):
        assert le(a, c)
