"""Certificate envelopes: header, kind tag, instance digest and payload."""
from __future__ import annotations

import hashlib
import json
from typing import Any

from .errors import ParseError
from .presentation import Presentation, TargetSet, canonical_json, digest

HEADER = "combdual-cert/1"
KINDS = ("undominating-star", "tough-subgraph", "star-decomposition", "admissible", "tough-branch")


def envelope(kind: str, P: Presentation, U: TargetSet, payload: Any) -> dict:
    if kind not in KINDS:
        raise ValueError(f"unknown certificate kind {kind!r}")
    return {"format": HEADER, "kind": kind, "instance": digest(P, U), "payload": payload}


def tough_branch(P: Presentation, U: TargetSet, tough: dict, star: dict) -> dict:
    return envelope("tough-branch", P, U, {"toughSubgraph": tough, "starDecomposition": star})


def cert_digest(cert: dict) -> str:
    return hashlib.sha256(canonical_json(cert).encode()).hexdigest()[:16]


def dumps(cert: dict) -> str:
    return json.dumps(cert, sort_keys=True, indent=1) + "\n"


def parse_certificate(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"certificate: line {e.lineno} col {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict) or doc.get("format") != HEADER:
        raise ParseError(f"certificate: missing header {HEADER!r}")
    if doc.get("kind") not in KINDS:
        raise ParseError(f"certificate: unknown kind {doc.get('kind')!r}")
    if not isinstance(doc.get("instance"), str) or "payload" not in doc:
        raise ParseError("certificate: instance digest and payload are required")
    return doc
