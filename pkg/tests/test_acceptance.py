"""Acceptance criteria 1-8.  Each test records one pass/fail line; the lines are
repeated in the terminal summary (see conftest) and when run as a script."""
import itertools
import sys
import time

import pytest

from combdual.admissible import build_principal_tree_set
from combdual.components import ExplicitPattern, GradedPattern, critical_sets
from combdual.decide import admissible_certificate, decide, verify_certificate
from combdual.mutants import MUTANTS
from combdual.oracle import oracle_check, property_suite
from combdual.presentation import BUNDLED, load_bundled
from combdual.random_instances import random_fan_instance
from combdual.selectors import Sel
from combdual.selftest import CHECKERS, _parts
from combdual.tough import build_tough_subgraph
from combdual.verify import verify_star_decomposition, verify_tough_subgraph, verify_undominating_star
from combdual.vertices import spine
from combdual.vset import VSet

RANDOM = 200
LINES: dict[int, str] = {}


def record(n: int, ok: bool, what: str) -> None:
    LINES[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {what}"
    print(LINES[n])
    assert ok, LINES[n]


def corpus():
    return [(k, *load_bundled(k)) for k in BUNDLED]


def randoms():
    return [(f"RAND-{i}", *random_fan_instance(i)) for i in range(RANDOM)]


@pytest.fixture(scope="module")
def decided():
    return [(name, P, U, decide(P, U)) for name, P, U in corpus() + randoms()]


def test_criterion_1_prefix_critical_family():
    t = time.perf_counter()
    P, U = load_bundled("INST-PAPER")
    pats = critical_sets(P)
    shape = len(pats) == 1 and isinstance(pats[0], GradedPattern)
    shape = shape and all(pats[0].at(n) == frozenset(spine(i) for i in range(n + 1)) for n in range(20))
    rep = oracle_check(P, U, "critical", depth=8, copies=5, size=4)
    dt = time.perf_counter() - t
    record(1, shape and rep.accepted and dt < 10, f"X(n) = {{s0..sn}}; oracle d=8 m=5 |X|<=4: {rep.checks[0].detail}; {dt:.2f}s")


def test_criterion_2_naive_candidate_control():
    P, U = load_bundled("INST-PAPER")
    _, F = build_principal_tree_set(P, U)
    spine_only = F.part == VSet.make(spine=Sel.all())
    full = build_tough_subgraph(P, U)
    naive = dict(full, paths=[], gradedLinkage=[])
    r_naive = verify_tough_subgraph(P, U, naive)
    r_full = verify_tough_subgraph(P, U, full)
    probe = next(c for c in r_naive.checks if c.name == "probe.toughness")
    ok = spine_only and not probe.ok and r_full.accepted
    record(2, ok, f"part = spine: {spine_only}; probe on bare G[B]: {probe.detail}; full output accepted: {r_full.accepted}")


def test_criterion_3_dichotomy(decided):
    t = time.perf_counter()
    bad = []
    for name, P, U, d in decided:
        if d.branch not in ("star", "tough") or not verify_certificate(P, U, d.certificate).accepted:
            bad.append(name)
    stars = [_parts(d)["undominating-star"] for *_, d in decided if d.branch == "star"]
    toughs = [_parts(d)["tough-subgraph"] for *_, d in decided if d.branch == "tough"]
    leaks = 0
    for name, P, U, d in decided:
        if d.branch == "star":
            leaks += sum(verify_tough_subgraph(P, U, c).accepted for c in toughs)
        else:
            leaks += sum(verify_undominating_star(P, U, c).accepted for c in stars)
    dt = time.perf_counter() - t
    ok = not bad and leaks == 0 and dt < 300
    record(
        3,
        ok,
        f"{len(decided)} instances ({len(stars)} star, {len(toughs)} tough); rejected {bad[:3]}; "
        f"{leaks} opposite-branch certificates accepted; {dt:.1f}s",
    )


STAR_CHECKS = {"star.property", "elements.tame", "central.contains-U", "critical.lives-in-leaf"}


def test_criterion_4_constructive_obligations(decided):
    problems = []
    n = 0
    for name, P, U, d in decided:
        if d.branch != "tough":
            continue
        n += 1
        parts = _parts(d)
        r1 = verify_tough_subgraph(P, U, parts["tough-subgraph"], l2_size=4)
        need = {"linkage.finite-degree", "linkage.covering-edges", "linkage.pairs-linked"}
        got = {c.name: c.ok for c in r1.checks}
        if not r1.accepted or not need <= set(got):
            problems.append(f"{name}: {r1.first_failure() or 'missing checks'}")
        r2 = verify_star_decomposition(P, U, parts["star-decomposition"])
        need = set(STAR_CHECKS)
        if parts["star-decomposition"]["mode"] == "parliament":
            need |= {"principal.part-covered", "principal.below-star"}
        if not r2.accepted or not need <= {c.name for c in r2.checks}:
            problems.append(f"{name}: {r2.first_failure() or 'missing checks'}")
    record(4, not problems, f"{n} tough-branch instances; failures: {problems[:3]}")


def test_criterion_5_lemma_suite():
    problems = []
    for name, P, U in corpus():
        for seed in (0, 1):
            rep = property_suite(P, seed, rounds=100)
            if not rep.accepted:
                bad = rep.first_failure()
                problems.append(f"{name}/{seed}: {bad.name} {bad.detail}")
    record(5, not problems, f"{len(BUNDLED)} instances x 2 seeds x 100 orientations; failures: {problems[:3]}")


def pairwise_incomparable(P) -> int:
    sets = [p.vertices for p in critical_sets(P) if isinstance(p, ExplicitPattern)]
    best = 0
    for r in range(len(sets), 2, -1):
        if any(all(not a <= b and not b <= a for a, b in itertools.combinations(c, 2)) for c in itertools.combinations(sets, r)):
            best = r
            break
    return best


def test_criterion_6_admissibility():
    cases = corpus()
    extra = [c for c in randoms() if pairwise_incomparable(c[1]) >= 3][:20]
    problems = []
    for name, P, U in cases + extra:
        try:
            admissible_certificate(P, U)
        except Exception as e:  # noqa: BLE001
            problems.append(f"{name}: {e}")
    wide = sum(pairwise_incomparable(P) >= 3 for _, P, _ in cases + extra)
    ok = not problems and wide >= 5
    record(6, ok, f"{len(cases)} bundled + {len(extra)} random; {wide} with >= 3 incomparable critical sets; failures: {problems[:3]}")


def test_criterion_7_oracle_agreement():
    problems = []
    details = []
    for name, P, U in corpus():
        rep = oracle_check(P, U, "components", depth=12, copies=5, size=3)
        details.append(rep.checks[0].detail.split(" deleted")[0])
        if not rep.accepted:
            problems.append(f"{name}: {rep.checks[0].detail}")
    record(7, not problems, f"d=12 m=5 |X|<=3, deleted sets per instance {details}; failures: {problems[:3]}")


def test_criterion_8_tamper_sensitivity(decided):
    applied = {m: 0 for kind in MUTANTS for m, _ in MUTANTS[kind]}
    survivors = []
    for name, P, U, d in decided[: len(BUNDLED) + 50]:
        parts = _parts(d)
        if d.branch == "tough":
            parts["admissible"] = admissible_certificate(P, U)["payload"]
        for kind, cert in parts.items():
            assert CHECKERS[kind](P, U, cert).accepted
            for mname, fn in MUTANTS[kind]:
                bad = fn(P, U, cert)
                if bad is None:
                    continue
                applied[mname] += 1
                if CHECKERS[kind](P, U, bad).accepted:
                    survivors.append(f"{mname}@{name}")
    unused = [m for m, k in applied.items() if not k]
    ok = not survivors and not unused
    record(8, ok, f"applications {applied}; survivors {survivors[:3]}; never applicable {unused}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
