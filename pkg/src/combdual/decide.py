"""The dichotomy: an undominating star, or a tough subgraph with a star-decomposition.

Every certificate is re-checked by the independent verifiers before it is
returned.  A rejected star-decomposition is rebuilt with its end chains
shifted; anything else that fails is an internal error.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import certificates as C
from .admissible import build_strongly_admissible
from .errors import CheckerRejected, ParseError
from .presentation import Presentation, TargetSet, digest
from .stardecomp import build_star_decomposition
from .tough import build_tough_subgraph
from .toughness import extract_undominating_star, toughness
from .verify import (
    DEFAULT_COPIES,
    DEFAULT_DEPTH,
    VerificationReport,
    verify_admissible,
    verify_star_decomposition,
    verify_tough_subgraph,
    verify_undominating_star,
)

CHAIN_RETRIES = 3


@dataclass
class Decision:
    branch: str  # "star" | "tough"
    certificate: dict
    reports: dict[str, VerificationReport]

    @property
    def exit_code(self) -> int:
        return 1 if self.branch == "star" else 0


def _require(rep: VerificationReport, stage: str) -> None:
    if not rep.accepted:
        bad = rep.first_failure()
        raise CheckerRejected(stage, f"{bad.name}: {bad.detail}" if bad else "")


def star_decomposition_payload(P: Presentation, U: TargetSet) -> tuple[dict, VerificationReport]:
    for offset in range(CHAIN_RETRIES + 1):
        payload = build_star_decomposition(P, U, chain_offset=offset)
        rep = verify_star_decomposition(P, U, payload)
        if rep.accepted:
            return payload, rep
    bad = rep.first_failure()
    raise CheckerRejected("star-decomposition", f"{bad.name}: {bad.detail}" if bad else "")


def decide(P: Presentation, U: TargetSet) -> Decision:
    t = toughness(P, U)
    if not t.tough:
        payload = extract_undominating_star(P, U, t)
        rep = verify_undominating_star(P, U, payload)
        _require(rep, "undominating-star")
        return Decision("star", C.envelope("undominating-star", P, U, payload), {"undominating-star": rep})
    tough = build_tough_subgraph(P, U)
    r1 = verify_tough_subgraph(P, U, tough)
    _require(r1, "tough-subgraph")
    star, r2 = star_decomposition_payload(P, U)
    return Decision("tough", C.tough_branch(P, U, tough, star), {"tough-subgraph": r1, "star-decomposition": r2})


def admissible_certificate(P: Presentation, U: TargetSet) -> dict:
    A = build_strongly_admissible(P, U)
    doc = A.to_json(P)
    _require(verify_admissible(P, doc, U), "admissible")
    return C.envelope("admissible", P, U, doc)


def verify_certificate(
    P: Presentation, U: TargetSet, cert: dict, depth: int = DEFAULT_DEPTH, copies: int = DEFAULT_COPIES
) -> VerificationReport:
    """Dispatch on the certificate kind.  A digest that does not match the
    instance is malformed input, not a rejection."""
    if cert.get("instance") != digest(P, U):
        raise ParseError("certificate was issued for a different instance")
    kind, payload = cert["kind"], cert["payload"]
    if not isinstance(payload, dict):
        raise ParseError("certificate payload must be an object")
    if kind == "undominating-star":
        return verify_undominating_star(P, U, payload)
    if kind == "tough-subgraph":
        return verify_tough_subgraph(P, U, payload, depth, copies)
    if kind == "star-decomposition":
        return verify_star_decomposition(P, U, payload)
    if kind == "admissible":
        return verify_admissible(P, payload, U)
    rep = VerificationReport(instance=cert["instance"], certificate=C.cert_digest(cert))
    checkers = {
        "toughSubgraph": lambda part: verify_tough_subgraph(P, U, part, depth, copies),
        "starDecomposition": lambda part: verify_star_decomposition(P, U, part),
    }
    for key, fn in checkers.items():
        part = payload.get(key)
        if not isinstance(part, dict):
            rep.add(f"{key}.present", False, "missing")
            continue
        rep.merge(fn(part), key)
    return rep.finish()
