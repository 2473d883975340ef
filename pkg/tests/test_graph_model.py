import json

import pytest

from combdual.components import critical_sets, delete_and_decompose, is_critical, neighbors
from combdual.errors import InvalidInstance, ParseError, ResourceLimit
from combdual.oracle import oracle_check
from combdual.presentation import instance_from_dict, instance_to_dict, parse_presentation
from combdual.truncation import materialize_truncation, truncation_size, vertex_budget
from combdual.vertices import fan_copy, graded_copy, kernel, name_of, parse_vertex, spine
from combdual.vset import VSet


def test_vertex_names_round_trip():
    for v in (kernel(3), spine(7), fan_copy(1, 4, 0), graded_copy(0, 2, 5, 1)):
        assert parse_vertex(name_of(v)) == v


def test_bad_vertex_name():
    with pytest.raises(ValueError):
        parse_vertex("q7")


def test_fin_document(fin):
    P, U = fin
    assert P.kernel.n == 3 and not P.has_spine and not P.fan and not P.graded
    assert {kernel(i) for i in range(3)} == set(U.explicit)


def test_empty_attachment_is_invalid(fan2):
    P, U = fan2
    doc = instance_to_dict(P, U)
    doc["fanClasses"][0]["attachments"] = []
    with pytest.raises(InvalidInstance):
        instance_from_dict(doc)


@pytest.mark.parametrize("text", ["", "[]", '{"format": "other"}', "{not json"])
def test_malformed_document(text):
    with pytest.raises(ParseError):
        parse_presentation(text)


def test_document_round_trip(bundled):
    _, P, U = bundled
    P2, U2 = parse_presentation(json.dumps(instance_to_dict(P, U)))
    assert instance_to_dict(P2, U2) == instance_to_dict(P, U)


def test_spine_neighbours_on_ray(ray):
    P, _ = ray
    N = neighbors(P, spine(0))
    assert spine(1) in N
    assert all(graded_copy(0, n, i, 0) in N for n in range(6) for i in range(6))
    assert spine(2) not in N


def test_prefix_spine_is_edgeless(prefix):
    P, _ = prefix
    N = neighbors(P, spine(0))
    assert spine(1) not in N
    assert graded_copy(0, 4, 9, 0) in N


def test_copy_joined_to_prefix(prefix):
    P, _ = prefix
    assert neighbors(P, graded_copy(0, 2, 5, 0)) == VSet.of([spine(0), spine(1), spine(2)])


def test_neighbours_match_truncation(bundled):
    _, P, _ = bundled
    T = materialize_truncation(P, 5, 3)
    idx = T.index
    adj = T.adjacency()
    for v in T.names:
        if v.level >= 3:
            continue
        expect = {T.names[j] for j in adj[idx[v]]}
        got = {w for w in T.names if w in neighbors(P, v)}
        assert got == expect, name_of(v)


def test_decompose_prefix_prefix(prefix):
    P, _ = prefix
    D = delete_and_decompose(P, [spine(0), spine(1)])
    assert len(D.explicit) == 1
    tail = D.explicit[0].vertices
    assert spine(2) in tail and spine(9) in tail and graded_copy(0, 3, 4, 0) in tail
    got = {(b.level, b.neighbourhood) for b in D.bundles}
    assert got == {(0, frozenset({spine(0)})), (1, frozenset({spine(0), spine(1)}))}
    assert all(b.copies.is_empty() is False and not b.copies.is_finite() for b in D.bundles)


def test_decompose_fin_path(fin):
    P, _ = fin
    D = delete_and_decompose(P, [kernel(1)])
    assert sorted(c.vertices.finite_members() for c in D.explicit) == [[kernel(0)], [kernel(2)]]
    assert D.bundles == ()


def test_decompose_nothing_deleted(prefix):
    P, _ = prefix
    D = delete_and_decompose(P, [])
    # edgeless spine: each spine vertex links to every copy, so one component
    assert len(D.explicit) == 1 and D.bundles == ()


@pytest.mark.parametrize("X", [["s0", "s1"], ["s2"], ["s0", "s3"]])
def test_decompose_agrees_with_truncation(prefix, X):
    P, U = prefix
    rep = oracle_check(P, U, "components", depth=10, copies=5, X=[parse_vertex(x) for x in X])
    assert rep.accepted, rep.render()


def test_critical_prefix(prefix):
    P, _ = prefix
    (pat,) = critical_sets(P)
    assert all(pat.at(n) == frozenset(spine(i) for i in range(n + 1)) for n in range(6))
    assert is_critical(P, [spine(0), spine(1), spine(2)])
    assert not is_critical(P, [spine(1)])


def test_critical_fin(fin):
    assert critical_sets(fin[0]) == ()


def test_critical_fan2(fan2):
    pats = critical_sets(fan2[0])
    assert {p.vertices for p in pats} == {frozenset({kernel(0), kernel(1)}), frozenset({kernel(1), kernel(2)})}


def test_truncation_prefix_small(prefix):
    T = materialize_truncation(prefix[0], 1, 1)
    assert T.to_json() == {
        "depth": 1,
        "copies": 1,
        "vertices": ["s0", "s1", "g0[0,0].0", "g0[1,0].0"],
        "edges": [[0, 2], [0, 3], [1, 3]],
    }


def test_truncation_ray_has_spine_edge(ray):
    T = materialize_truncation(ray[0], 1, 1)
    assert [0, 1] in T.to_json()["edges"] and T.n == 4


def test_truncation_fin_is_kernel(fin):
    for d, m in [(0, 1), (4, 3)]:
        T = materialize_truncation(fin[0], d, m)
        assert list(T.names) == [kernel(i) for i in range(3)]


def test_truncation_fan2_count(fan2):
    T = materialize_truncation(fan2[0], 0, 2)
    assert T.n == 7 == truncation_size(fan2[0], 0, 2)
    assert len(T.to_json()["edges"]) == 2 + 2 * 2 * 2


def test_budget(prefix, monkeypatch):
    assert vertex_budget() == 5000
    with pytest.raises(ResourceLimit):
        materialize_truncation(prefix[0], 10**9, 5)
    monkeypatch.setenv("COMBDUAL_BUDGET", "10")
    assert vertex_budget() == 10
    with pytest.raises(ResourceLimit):
        materialize_truncation(prefix[0], 3, 3)
