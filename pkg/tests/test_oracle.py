"""Symbolic answers against truncation brute force."""
import itertools

import pytest

from combdual.components import critical_sets
from combdual.oracle import ORACLE_KINDS, lemma_problems, oracle_check, property_suite, random_orientation
from combdual.presentation import TargetSet, load_bundled
from combdual.truncation import materialize_truncation
from combdual.vertices import kernel, spine


def plain_components(T, X):
    """Breadth-first components of T - X, written without the oracle kernels."""
    adj = T.adjacency()
    drop = {T.index[v] for v in X}
    seen, out = set(), []
    for s in range(T.n):
        if s in drop or s in seen:
            continue
        comp, todo = {s}, [s]
        while todo:
            u = todo.pop()
            for w in adj[u]:
                if w not in drop and w not in comp:
                    comp.add(w)
                    todo.append(w)
        seen |= comp
        out.append(comp)
    return out, adj, drop


def full_count(T, X):
    comps, adj, drop = plain_components(T, X)
    return sum(1 for c in comps if {w for u in c for w in adj[u] if w in drop} == drop)


def test_prefix_critical_by_hand():
    P, _ = load_bundled("INST-PAPER")
    T = materialize_truncation(P, 8, 5)
    for n in range(4):
        assert full_count(T, [spine(i) for i in range(n + 1)]) >= 5
    for X in ([spine(1)], [spine(0), spine(2)], [spine(1), spine(2)]):
        assert full_count(T, X) < 5


def test_fan2_critical_by_hand():
    P, _ = load_bundled("INST-FAN2")
    T = materialize_truncation(P, 0, 6)
    crit = {
        X for r in (1, 2, 3) for X in itertools.combinations([kernel(i) for i in range(3)], r) if full_count(T, X) >= 6
    }
    assert crit == {(kernel(0), kernel(1)), (kernel(1), kernel(2))}


# frozen from the exhaustive sweeps at depth 6, 4 copies, sets of size <= 3
CRITICAL = {
    "INST-PAPER": "7175 subsets, 3 critical",
    "INST-RAY": "7175 subsets, 3 critical",
    "INST-FIN": "7 subsets, 0 critical",
    "INST-FAN1": "63 subsets, 1 critical",
    "INST-FAN2": "231 subsets, 2 critical",
    "INST-INC3": "4991 subsets, 4 critical",
    "INST-MIXED": "152193 subsets, 13 critical",
}


@pytest.mark.parametrize("key", sorted(CRITICAL))
def test_critical_agreement(key):
    P, U = load_bundled(key)
    rep = oracle_check(P, U, "critical", depth=6, copies=4, size=3)
    assert rep.accepted and rep.checks[0].detail == CRITICAL[key]


def test_prefix_critical_at_fixture_scale():
    P, U = load_bundled("INST-PAPER")
    rep = oracle_check(P, U, "critical", depth=8, copies=5, size=4)
    assert rep.accepted and rep.checks[0].detail == "342540 subsets, 4 critical"


def test_fin_components():
    P, U = load_bundled("INST-FIN")
    assert oracle_check(P, U, "components", X=[kernel(1)]).accepted


@pytest.mark.parametrize("key", ["INST-PAPER", "INST-FAN1", "INST-FAN2", "INST-INC3"])
def test_components_agreement(key):
    P, U = load_bundled(key)
    assert oracle_check(P, U, "components", depth=8, copies=4, size=2).accepted


def test_toughness_agreement(bundled):
    _, P, U = bundled
    assert oracle_check(P, U, "toughness", depth=8, copies=5, size=3).accepted


def test_fan2_probe():
    P, U = load_bundled("INST-FAN2")
    rep = oracle_check(P, U, "toughness", size=3)
    assert rep.accepted and "none leaves 5" in rep.checks[0].detail


def test_unknown_kind():
    P, U = load_bundled("INST-FIN")
    assert "critical" in ORACLE_KINDS
    with pytest.raises(ValueError):
        oracle_check(P, U, "nonsense")


@pytest.mark.parametrize("key", ["INST-PAPER", "INST-FAN2"])
@pytest.mark.parametrize("seed", [0, 7])
def test_property_suite(key, seed):
    P, _ = load_bundled(key)
    rep = property_suite(P, seed, rounds=30)
    assert rep.accepted, rep.render()


def test_property_suite_vacuous():
    P, _ = load_bundled("INST-FIN")
    assert critical_sets(P) == ()
    assert property_suite(P, 3, TargetSet(), rounds=5).accepted


def test_random_orientation_is_consistent():
    import random

    from combdual.admissible import build_principal_tree_set
    from combdual.separations import inconsistent_pair

    P, U = load_bundled("INST-INC3")
    _, F = build_principal_tree_set(P, U)
    seps = [m.sep for m in F.instances()]
    rng = random.Random(1)
    for _ in range(20):
        O = random_orientation(seps, rng)
        assert inconsistent_pair(O) is None
        assert lemma_problems(O, seps) == []
