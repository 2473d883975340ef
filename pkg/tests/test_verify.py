import copy

import pytest

from combdual.certificates import envelope
from combdual.decide import admissible_certificate, decide, verify_certificate
from combdual.errors import ParseError
from combdual.mutants import drop_path, drop_target_vertex, enlarge_separator, exclude_nothing, finite_copies, shrink_witness
from combdual.presentation import load_bundled, with_target
from combdual.selectors import Sel
from combdual.tough import build_tough_subgraph
from combdual.stardecomp import build_star_decomposition
from combdual.toughness import extract_undominating_star, toughness
from combdual.verify import verify_admissible, verify_star_decomposition, verify_tough_subgraph, verify_undominating_star
from combdual.vertices import kernel


def failed(rep):
    bad = rep.first_failure()
    return None if bad is None else bad.name


@pytest.fixture
def fan1_star(fan1):
    P, U = fan1
    return P, U, extract_undominating_star(P, U, toughness(P, U))


def test_star_accepted(fan1_star):
    assert verify_undominating_star(*fan1_star).accepted


def test_star_shrunk_witness(fan1_star):
    P, U, c = fan1_star
    assert failed(verify_undominating_star(P, U, shrink_witness(P, U, c))) == "leaves.separated"


def test_star_finite_copies(fan1_star):
    P, U, c = fan1_star
    assert failed(verify_undominating_star(P, U, finite_copies(P, U, c))) == "copies.infinite"


def test_star_garbage_is_a_failed_check(fan1_star):
    P, U, c = fan1_star
    bad = dict(c, center="nope")
    assert failed(verify_undominating_star(P, U, bad)) == "center.parse"


def test_tough_subgraph_accepted(prefix):
    P, U = prefix
    rep = verify_tough_subgraph(P, U, build_tough_subgraph(P, U))
    assert rep.accepted
    assert {c.name for c in rep.checks} >= {"linkage.finite-degree", "linkage.covering-edges", "linkage.pairs-linked", "probe.toughness"}


@pytest.mark.parametrize("key", ["INST-PAPER", "INST-INC3", "INST-MIXED", "INST-RAY"])
def test_tough_subgraph_missing_path(key):
    P, U = load_bundled(key)
    c = drop_path(P, U, build_tough_subgraph(P, U))
    assert failed(verify_tough_subgraph(P, U, c)) == "linkage.pairs-linked"


def test_tough_subgraph_missing_target(fin):
    P, U = fin
    c = drop_target_vertex(P, U, build_tough_subgraph(P, U))
    assert failed(verify_tough_subgraph(P, U, c)) == "partB.contains-U"


def test_star_decomposition_accepted(prefix):
    P, U = prefix
    rep = verify_star_decomposition(P, U, build_star_decomposition(P, U))
    assert rep.accepted
    assert "critical.lives-in-leaf" in {c.name for c in rep.checks}


def test_star_decomposition_enlarged_separator(prefix):
    P, U = prefix
    c = enlarge_separator(P, U, build_star_decomposition(P, U))
    assert failed(verify_star_decomposition(P, U, c)) == "elements.valid"


def test_star_decomposition_wrong_central_part(prefix):
    P, U = prefix
    c = copy.deepcopy(build_star_decomposition(P, U))
    c["centralPart"]["kernel"] = []
    c["centralPart"]["spine"] = Sel.from_(1).to_json()
    assert failed(verify_star_decomposition(P, U, c)) == "central.part"


def test_finite_star_decomposition_central_part_is_target(fin):
    P, U = fin
    U2 = with_target(U, explicit=frozenset({kernel(0), kernel(2)}))
    rep = verify_star_decomposition(P, U2, build_star_decomposition(P, U2))
    assert rep.accepted


def test_admissible_accepted(fan2, inc3):
    for P, U in (fan2, inc3):
        assert verify_admissible(P, admissible_certificate(P, U)["payload"], U).accepted


def test_admissible_exclude_nothing(inc3):
    P, U = inc3
    c = exclude_nothing(P, U, admissible_certificate(P, U)["payload"])
    assert failed(verify_admissible(P, c, U)) == "admissible.pairs"


def test_fan2_exclude_nothing_not_applicable(fan2):
    # no full component of one critical set contains the other set's side
    P, U = fan2
    assert exclude_nothing(P, U, admissible_certificate(P, U)["payload"]) is None


def test_empty_assignment(fin):
    P, U = fin
    assert verify_admissible(P, {"explicit": [], "graded": []}, U).accepted


def test_verify_certificate_roundtrip(bundled):
    _, P, U = bundled
    assert verify_certificate(P, U, decide(P, U).certificate).accepted


def test_digest_mismatch(prefix, ray):
    cert = decide(*prefix).certificate
    with pytest.raises(ParseError):
        verify_certificate(*ray, cert)


def test_opposite_branch(prefix, fan1):
    star = extract_undominating_star(*fan1, toughness(*fan1))
    tough = build_tough_subgraph(*prefix)
    assert not verify_undominating_star(*prefix, star).accepted
    assert not verify_tough_subgraph(*fan1, tough, depth=6, copies=3).accepted


def test_edgeless_candidate_fails_probe(prefix):
    P, U = prefix
    c = copy.deepcopy(build_tough_subgraph(P, U))
    c["gradedLinkage"] = []
    rep = verify_tough_subgraph(P, U, c)
    assert not rep.accepted
    assert not next(x for x in rep.checks if x.name == "probe.toughness").ok


def test_report_is_sorted_and_serialisable(prefix):
    P, U = prefix
    rep = verify_certificate(P, U, decide(P, U).certificate)
    names = [c.name for c in rep.checks]
    assert names == sorted(names)
    doc = rep.to_json()
    assert doc["verdict"] == "accept"


def test_envelope_kind(fan1_star):
    P, U, c = fan1_star
    cert = envelope("undominating-star", P, U, c)
    assert cert["format"] == "combdual-cert/1" and verify_certificate(P, U, cert).accepted
