"""Parliaments, corridor targets and the assembled stars."""
import pytest

from combdual.admissible import build_principal_tree_set
from combdual.errors import SaturationError
from combdual.family import Family, corridor_targets, grade_monotone, parliament, star_from_targets
from combdual.rules import rule_start
from combdual.selectors import LevelSel, Sel
from combdual.separations import is_star, le, make_sep
from combdual.vertices import kernel, spine
from combdual.vset import VSet


def chain_family(P, U):
    """Every component of G - X(n) except the tail: an increasing chain."""
    return Family(P, U, [], [{"rule": "Kall", "family": 0, "from": 0}], rule_start(P, U))


def level(n):
    return VSet.make(graded={(0, 0): LevelSel.at_level(n, Sel.all())})


def test_chain_parliament_is_itself(prefix):
    P, U = prefix
    F = chain_family(P, U)
    pi = parliament(F)
    assert pi.kinds == ["chain"]
    assert [m.sep for m in pi.instances(6)] == [m.sep for m in F.instances(6)]
    # grade k holds the single supremum X(k-1)
    assert all(pi.grades[f"R0@{n}"] == n + 1 for n in range(F.horizon + 1))
    assert grade_monotone(pi) is None


def test_chain_target_is_an_end(prefix):
    P, U = prefix
    (t,) = corridor_targets(parliament(chain_family(P, U)))
    assert t.kind == "end" and t.rule == 0 and t.n0 == 0


def test_chain_star_has_level_leaves(prefix):
    P, U = prefix
    pi = parliament(chain_family(P, U))
    sigma, prov = star_from_targets(pi, corridor_targets(pi))
    seps = [m.sep for m in sigma.instances(6)]
    for n, s in enumerate(seps):
        assert s.sep == frozenset(spine(i) for i in range(n + 1))
        assert s.small == level(n)
    assert is_star(seps) is None
    assert sigma.part == VSet.make(spine=Sel.all())
    assert {p["mode"] for p in prov} == {"corridor-end"}


def test_principal_parliament_prefix(prefix):
    P, U = prefix
    _, F = build_principal_tree_set(P, U)
    pi = parliament(F)
    assert pi.kinds == ["antichain"]
    targets = corridor_targets(pi)
    assert all(t.kind == "leaf" for t in targets)
    assert targets[-1].rule == 0


def test_two_incomparable_fan_separations(fan2):
    P, U = fan2
    _, F = build_principal_tree_set(P, U)
    pi = parliament(F)
    assert [s for _, s in pi.explicit] == [s for _, s in F.explicit]
    assert set(pi.grades.values()) == {2}
    assert [t.kind for t in corridor_targets(pi)] == ["leaf", "leaf"]


def test_empty_parliament(fin):
    P, U = fin
    pi = parliament(Family(P, U, []))
    assert pi.explicit == [] and pi.rules == [] and corridor_targets(pi) == []


def test_finite_directed_corridor_leaf(fan2):
    P, U = fan2
    K = [kernel(i) for i in range(3)]
    lo = make_sep(P, K, VSet.make(fan={(0, 0): Sel.only([0])}))
    hi = make_sep(P, K, VSet.make(fan={(0, 0): Sel.only([0, 1])}))
    assert le(lo, hi)
    (t,) = corridor_targets(Family(P, U, [("lo", lo), ("hi", hi)]))
    assert t.kind == "leaf" and t.top == hi


def test_part_and_saturation(prefix):
    P, U = prefix
    F = chain_family(P, U)
    F.check_saturation()
    assert F.part == VSet.make(spine=Sel.all())


def test_bounded_chain_is_refused(mixed):
    P, _ = mixed
    from combdual.presentation import TargetSet

    _, F = build_principal_tree_set(P, TargetSet())
    with pytest.raises(SaturationError):
        parliament(F)


def test_all_components_chain_escapes_its_own_star(prefix):
    # members keep every lower level, leaves only one: no leaf covers X(1)
    # even after dropping a single component
    from combdual.verify import principal_below_star

    P, U = prefix
    F = chain_family(P, U)
    pi = parliament(F)
    sigma, _ = star_from_targets(pi, corridor_targets(pi))
    assert principal_below_star(F.instances(8), sigma.instances(10)) == (
        "R0@1",
        "no element of the star lies above it up to one component",
    )


def test_lessish_against_level_leaves(prefix):
    from combdual.rules import rule_instance
    from combdual.separations import lessish

    P, U = prefix
    got = [
        lessish(rule_instance(P, U, {"rule": "Kall", "family": 0}, n), rule_instance(P, U, {"rule": "K", "family": 0}, n))
        for n in range(4)
    ]
    assert got == [True, False, False, False]
    full = [rule_instance(P, U, {"rule": "K", "family": 0}, n) for n in range(4)]
    assert all(lessish(s, s) for s in full)
