"""Command-line front end.

Exit codes: 0 tough branch or accept, 1 star branch, 2 invalid input,
3 verification failure, 4 internal error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable

from . import certificates as C
from .components import ExplicitPattern, critical_sets
from .decide import admissible_certificate, decide, verify_certificate
from .errors import CombdualError, InternalError, ParseError, ResourceLimit
from .presentation import BUNDLED, Presentation, TargetSet, load_bundled, parse_presentation
from .tough import build_tough_subgraph
from .toughness import extract_undominating_star, toughness
from .truncation import materialize_truncation
from .verify import DEFAULT_COPIES, DEFAULT_DEPTH, verify_tough_subgraph, verify_undominating_star

EXIT_OK, EXIT_STAR, EXIT_INVALID, EXIT_REJECT, EXIT_INTERNAL = 0, 1, 2, 3, 4


def load_instance(ref: str) -> tuple[Presentation, TargetSet]:
    if ref in BUNDLED:
        return load_bundled(ref)
    path = Path(ref)
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"{ref}: {e.strerror}") from None
    return parse_presentation(text, path.stem)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- commands -------------------------------------------------------------------------


def cmd_analyze(a: argparse.Namespace) -> int:
    P, U = load_instance(a.instance)
    pats = critical_sets(P)
    t = toughness(P, U)
    doc = {
        "instance": P.name,
        "criticalSets": [
            {"kind": "explicit" if isinstance(p, ExplicitPattern) else "graded", "set": p.describe(), "witnesses": list(p.witnesses)}
            for p in pats
        ],
        "tough": t.tough,
        "witness": None if t.tough else t.describe(),
    }
    if a.format == "json":
        print(json.dumps(doc, indent=1, sort_keys=True))
        return EXIT_OK
    print(f"instance: {P.name or a.instance}")
    if not pats:
        print("no critical vertex sets")
    for p in doc["criticalSets"]:
        print(f"  critical ({p['kind']}): {p['set']}  via {', '.join(p['witnesses'])}")
    print("U tough" if t.tough else f"U not tough: {t.describe()}")
    return EXIT_OK


def cmd_decide(a: argparse.Namespace) -> int:
    P, U = load_instance(a.instance)
    d = decide(P, U)
    _emit(C.dumps(d.certificate), a.output)
    for name, rep in d.reports.items():
        print(f"{name}: {rep.verdict} ({len(rep.checks)} checks)", file=sys.stderr)
    print(f"branch: {'undominating star' if d.branch == 'star' else 'tough subgraph + star-decomposition'}", file=sys.stderr)
    return d.exit_code


def cmd_witness(a: argparse.Namespace) -> int:
    """The branch witness alone: the star, the tough subgraph, or the assignment."""
    P, U = load_instance(a.instance)
    t = toughness(P, U)
    kind = a.kind if a.kind != "auto" else ("star" if not t.tough else "tough")
    if kind == "star":
        if t.tough:
            raise ParseError("U is tough: there is no undominating star")
        payload = extract_undominating_star(P, U, t)
        rep = verify_undominating_star(P, U, payload)
        cert = C.envelope("undominating-star", P, U, payload)
    elif kind == "tough":
        if not t.tough:
            raise ParseError("U is not tough: there is no tough subgraph containing it")
        payload = build_tough_subgraph(P, U)
        rep = verify_tough_subgraph(P, U, payload)
        cert = C.envelope("tough-subgraph", P, U, payload)
    else:
        cert = admissible_certificate(P, U)
        rep = None
    if rep is not None and not rep.accepted:
        raise InternalError(f"fresh {kind} witness rejected: {rep.first_failure()}")
    _emit(C.dumps(cert), a.output)
    return EXIT_STAR if kind == "star" else EXIT_OK


def cmd_verify(a: argparse.Namespace) -> int:
    P, U = load_instance(a.instance)
    code = EXIT_OK
    docs = []
    for path in a.certificates:
        try:
            text = Path(path).read_text()
        except OSError as e:
            raise ParseError(f"{path}: {e.strerror}") from None
        cert = C.parse_certificate(text)
        rep = verify_certificate(P, U, cert, depth=a.depth, copies=a.copies)
        docs.append((path, rep))
        if not rep.accepted:
            code = EXIT_REJECT
    if a.format == "json":
        print(json.dumps([dict(file=p, **r.to_json()) for p, r in docs], indent=1, sort_keys=True))
    else:
        for path, rep in docs:
            print(f"{path}: {rep.certificate}")
            print(rep.render())
    return code


def cmd_materialize(a: argparse.Namespace) -> int:
    P, _ = load_instance(a.instance)
    try:
        T = materialize_truncation(P, a.depth, a.copies)
    except ValueError as e:
        raise ParseError(str(e)) from None
    text = T.to_dot() if a.format == "dot" else json.dumps(T.to_json(), indent=1) + "\n"
    _emit(text, a.output)
    return EXIT_OK


def cmd_selftest(a: argparse.Namespace) -> int:
    from .selftest import run_selftest

    return run_selftest(seed=a.seed, corpus=a.corpus, randoms=a.random, mutant=a.inject_mutant)


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="combdual", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def instance(p: argparse.ArgumentParser) -> None:
        p.add_argument("instance", help="instance file or bundled key (" + ", ".join(BUNDLED) + ")")

    p = sub.add_parser("analyze", help="critical vertex sets and toughness")
    instance(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("decide", help="decide the dichotomy and write certificates")
    instance(p)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_decide)

    p = sub.add_parser("witness", help="emit one witness without the other branch")
    instance(p)
    p.add_argument("--kind", choices=("auto", "star", "tough", "admissible"), default="auto")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_witness)

    p = sub.add_parser("verify", help="check certificates against an instance")
    instance(p)
    p.add_argument("certificates", nargs="+")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--copies", type=int, default=DEFAULT_COPIES)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("materialize", help="write a finite truncation")
    instance(p)
    p.add_argument("--depth", "-d", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--copies", "-m", type=int, default=DEFAULT_COPIES)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_materialize)

    p = sub.add_parser("selftest", help="acceptance sweep over a corpus and random instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corpus", help="directory of instance files (default: bundled instances)")
    p.add_argument("--random", type=int, default=50, help="number of random fan-class instances")
    p.add_argument("--inject-mutant", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(fn=cmd_selftest)
    return ap


def _guarded(fn: Callable[[argparse.Namespace], int], a: argparse.Namespace) -> int:
    try:
        return fn(a)
    except InternalError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (CombdualError, ResourceLimit) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK
    return _guarded(a.fn, a)


if __name__ == "__main__":
    sys.exit(main())
