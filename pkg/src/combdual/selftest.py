"""Acceptance sweep behind ``combdual selftest``."""
from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .decide import Decision, admissible_certificate, decide, verify_certificate
from .errors import CombdualError, ParseError
from .mutants import MUTANTS
from .oracle import oracle_check, property_suite
from .presentation import BUNDLED, Presentation, TargetSet, load_bundled, parse_presentation
from .random_instances import random_fan_instance
from .verify import (
    verify_admissible,
    verify_star_decomposition,
    verify_tough_subgraph,
    verify_undominating_star,
)


@dataclass
class Row:
    check: str
    instance: str
    ok: bool
    detail: str = ""


def _corpus(corpus: str | None) -> list[tuple[str, Presentation, TargetSet]]:
    if corpus is None:
        return [(k, *load_bundled(k)) for k in BUNDLED]
    files = sorted(Path(corpus).glob("*.json")) if Path(corpus).is_dir() else []
    if not files:
        raise ParseError(f"corpus {corpus!r} holds no instance files")
    return [(f.stem, *parse_presentation(f.read_text(), f.stem)) for f in files]


def _parts(d: Decision) -> dict[str, dict]:
    pay = d.certificate["payload"]
    if d.branch == "star":
        return {"undominating-star": pay}
    return {"tough-subgraph": pay["toughSubgraph"], "star-decomposition": pay["starDecomposition"]}


CHECKERS = {
    "undominating-star": verify_undominating_star,
    "tough-subgraph": verify_tough_subgraph,
    "star-decomposition": verify_star_decomposition,
    "admissible": lambda P, U, c: verify_admissible(P, c, U),
}


def _tamper(P, U, kind: str, cert: dict) -> dict | None:
    for _, m in MUTANTS[kind]:
        bad = m(P, U, cert)
        if bad is not None:
            return bad
    return None


def _forged(P: Presentation, U: TargetSet, branch: str, cert: dict):
    """The other branch's verifier on a certificate issued elsewhere."""
    if branch == "star":
        return verify_tough_subgraph(P, U, cert, depth=6, copies=3)
    return verify_undominating_star(P, U, cert)


def run_selftest(seed: int = 0, corpus: str | None = None, randoms: int = 50, mutant: bool = False) -> int:
    start = time.time()
    rows: list[Row] = []
    cases = _corpus(corpus)
    cases += [(f"RAND-{seed + i}", *random_fan_instance(seed + i)) for i in range(randoms)]
    decided: list[tuple[str, Presentation, TargetSet, Decision]] = []
    for name, P, U in cases:
        try:
            d = decide(P, U)
        except CombdualError as e:
            rows.append(Row("round-trip", name, False, f"{type(e).__name__}: {e}"))
            continue
        cert = d.certificate
        if mutant:
            parts = _parts(d)
            kind = next(iter(parts))
            bad = _tamper(P, U, kind, parts[kind])
            if bad is not None:
                cert = dict(cert, payload=bad if d.branch == "star" else dict(cert["payload"], toughSubgraph=bad))
        rep = verify_certificate(P, U, cert)
        fail = rep.first_failure()
        rows.append(Row("round-trip", name, rep.accepted, d.branch if fail is None else fail.name))
        decided.append((name, P, U, d))
    stars = [_parts(d)["undominating-star"] for *_, d in decided if d.branch == "star"]
    toughs = [_parts(d)["tough-subgraph"] for *_, d in decided if d.branch == "tough"]
    for name, P, U, d in decided:
        forged = toughs if d.branch == "star" else stars
        leaked = sum(_forged(P, U, d.branch, c).accepted for c in forged[:20])
        rows.append(Row("opposite-branch", name, leaked == 0, f"{leaked} forged certificates accepted"))
    for name, P, U, d in (row for row in decided if not row[0].startswith("RAND-")):
        parts = _parts(d)
        if d.branch == "tough":
            adm = admissible_certificate(P, U)["payload"]
            parts["admissible"] = adm
            rows.append(Row("admissible", name, verify_admissible(P, adm, U).accepted))
        for kind, cert in parts.items():
            for mname, m in MUTANTS[kind]:
                bad = m(P, U, cert)
                if bad is not None:
                    ok = not CHECKERS[kind](P, U, bad).accepted
                    rows.append(Row(f"tamper:{mname}", name, ok))
        for kind in ("components", "toughness"):
            r = oracle_check(P, U, kind, size=2)
            rows.append(Row(f"oracle:{kind}", name, r.accepted, r.checks[0].detail))
        r = property_suite(P, seed, rounds=20)
        fail = r.first_failure()
        rows.append(Row("lemmas", name, r.accepted, "" if fail is None else f"{fail.name}: {fail.detail}"))
    width = max(len(r.check) for r in rows)
    for r in rows:
        if not r.ok or not r.instance.startswith("RAND-"):
            print(f"{'pass' if r.ok else 'FAIL'}  {r.check:<{width}}  {r.instance:<12} {r.detail}")
    failed = [r for r in rows if not r.ok]
    print(f"{len(rows) - len(failed)}/{len(rows)} checks passed on {len(cases)} instances in {time.time() - start:.1f}s")
    if failed:
        print(f"{len(failed)} failures", file=sys.stderr)
        return 3
    return 0
