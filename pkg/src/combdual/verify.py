"""Independent certificate checkers.

Checkers take hostile payloads.  They rebuild what they need from the
presentation (decompositions, critical sets, rule instances) and never look
at constructor state.  Every problem becomes a failed check, not an
exception.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

import numpy as np

from . import kernels
from .admissible import assignment_from_json, conflict, principal_family
from .certificates import cert_digest
from .components import (
    ExplicitPattern,
    GradedPattern,
    are_adjacent,
    critical_sets,
    delete_and_decompose,
    neighbors,
)
from .errors import CombdualError
from .family import Family
from .presentation import Presentation, TargetSet, digest
from .rules import choice_sep, default_exclusion, full_components, make_choice, rule_start, validate_rule
from .selectors import LevelSel, Sel
from .separations import (
    Sep,
    invert,
    le,
    lessish,
    orientation_by,
    tameness_problem,
    validity_problem,
)
from .tough import designated_copy
from .truncation import materialize_truncation
from .vertices import FAN, GRADED, SPINE, VertexRef, name_of, parse_class_name, parse_vertex, spine
from .vset import VSet

DEFAULT_DEPTH = 12
DEFAULT_COPIES = 5


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)
    instance: str = ""
    certificate: str = ""

    @property
    def verdict(self) -> str:
        return "accept" if self.checks and all(c.ok for c in self.checks) else "reject"

    @property
    def accepted(self) -> bool:
        return self.verdict == "accept"

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.ok), None)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(ok), detail))
        return bool(ok)

    def merge(self, other: "VerificationReport", prefix: str) -> None:
        for c in other.checks:
            self.checks.append(Check(f"{prefix}.{c.name}", c.ok, c.detail))

    def finish(self) -> "VerificationReport":
        self.checks.sort(key=lambda c: c.name)
        return self

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "instance": self.instance,
            "certificate": self.certificate,
            "checks": [{"name": c.name, "status": "pass" if c.ok else "fail", "detail": c.detail} for c in self.checks],
        }

    def render(self) -> str:
        lines = [f"verdict: {self.verdict}"]
        for c in self.checks:
            lines.append(f"  [{'pass' if c.ok else 'FAIL'}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        return "\n".join(lines)


class _Reject(Exception):
    pass


def _guard(rep: VerificationReport, name: str, fn: Callable[[], Any]) -> Any:
    """Run a parsing step; malformed input becomes a failed check."""
    try:
        return fn()
    except (CombdualError, KeyError, TypeError, ValueError, AttributeError, IndexError) as e:
        rep.add(name, False, f"{type(e).__name__}: {e}")
        raise _Reject from None


def _vertices(P: Presentation, names: Iterable[str]) -> list[VertexRef]:
    out = []
    for x in names:
        v = parse_vertex(x)
        P.check_vertex(v)
        out.append(v)
    return out


def _window(P: Presentation, U: TargetSet) -> tuple[int, int]:
    n = rule_start(P, U)
    return n, 2 * n + 2


# -- undominating star -------------------------------------------------------------


def verify_undominating_star(P: Presentation, U: TargetSet, cert: dict) -> VerificationReport:
    rep = VerificationReport(instance=digest(P, U), certificate=cert_digest(cert))
    try:
        _undominating(P, U, cert, rep)
    except _Reject:
        pass
    return rep.finish()


def _undominating(P: Presentation, U: TargetSet, c: dict, rep: VerificationReport) -> None:
    X = frozenset(_guard(rep, "witness.parse", lambda: _vertices(P, c["witnessX"])))
    rep.add("witness.finite", bool(X), f"|X| = {len(X)}")
    center = _guard(rep, "center.parse", lambda: _vertices(P, [c["center"]])[0])
    rep.add("center.in-witness", center in X, name_of(center))
    kind, cls = _guard(rep, "class.parse", lambda: parse_class_name(c["class"]))
    classes = P.fan if kind == FAN else P.graded
    if not rep.add("class.exists", 0 <= cls < len(classes), c["class"]):
        return
    level = c.get("level")
    if kind == GRADED:
        ok = isinstance(level, int) and level >= 0
    else:
        ok = level is None
    if not rep.add("class.level", ok, str(level)):
        return
    level = level or 0
    copies = _guard(rep, "copies.parse", lambda: Sel.from_json(c["copies"]))
    rep.add("copies.infinite", copies.cofinite, repr(copies))
    tmpl = classes[cls].template
    path = _guard(rep, "path.parse", lambda: [int(x) for x in c["localPath"]])
    ok = bool(path) and all(0 <= x < tmpl.n for x in path) and len(set(path)) == len(path)
    ok = ok and all(b in tmpl.adj[a] for a, b in zip(path, path[1:]))
    if not rep.add("path.template", ok, str(path)):
        return
    if kind == FAN:
        attached = (path[0], center) in P.fan[cls].attachments
    else:
        gc = P.graded[cls]
        attached = path[0] in gc.attach_locals and center.kind == SPINE and center.level in gc.window.levels(level)
    rep.add("path.starts-at-center", attached, f"local {path[0]}")
    if kind == FAN:
        leaf_locals = VSet.make(fan={(cls, path[-1]): copies})
    else:
        leaf_locals = VSet.make(graded={(cls, path[-1]): LevelSel.at_level(level, copies)})
    rep.add("leaves.in-U", leaf_locals.issubset(U.as_vset(P)), f"local {path[-1]}")
    D = delete_and_decompose(P, X)
    home = [
        b
        for b in D.bundles
        if b.kind == kind and b.cls == cls and (kind == FAN or b.level == level) and copies.issubset(b.copies)
    ]
    rep.add(
        "leaves.separated",
        bool(home),
        "each selected copy is its own component of G - X" if home else "copies are not components of G - X",
    )


# -- tough subgraph --------------------------------------------------------------------


@dataclass
class Linkage:
    B: VSet
    paths: list[tuple[tuple[VertexRef, VertexRef], list[VertexRef]]]
    graded: list[int]

    def rule_path(self, P: Presentation, i: int, j: int) -> list[VertexRef] | None:
        v = designated_copy(P, self.B, i, j)
        return None if v is None else [spine(i), v, spine(j)]


def _parse_linkage(P: Presentation, c: dict, rep: VerificationReport) -> Linkage:
    B = _guard(rep, "partB.parse", lambda: VSet.from_json(c["partB"]))
    paths = []
    for k, row in enumerate(_guard(rep, "paths.parse", lambda: list(c.get("paths", [])))):
        pair = _guard(rep, "paths.parse", lambda: _vertices(P, row["pair"]))
        vs = _guard(rep, "paths.parse", lambda: _vertices(P, row["path"]))
        if len(pair) != 2:
            rep.add("paths.parse", False, f"path {k}: pair must have two vertices")
            raise _Reject
        paths.append(((pair[0], pair[1]), vs))
    pats = critical_sets(P)
    graded = _guard(rep, "graded.parse", lambda: [int(g["family"]) for g in c.get("gradedLinkage", [])])
    if not rep.add(
        "graded.families",
        all(0 <= f < len(pats) and isinstance(pats[f], GradedPattern) for f in graded),
        str(graded),
    ):
        raise _Reject
    return Linkage(B, paths, graded)


def _is_b_path(P: Presentation, B: VSet, x: VertexRef, y: VertexRef, path: list[VertexRef]) -> str | None:
    if len(path) < 2 or {path[0], path[-1]} != {x, y}:
        return "endpoints do not match the pair"
    if len(set(path)) != len(path):
        return "path repeats a vertex"
    if path[0] not in B or path[-1] not in B:
        return "an endpoint is outside B"
    if any(v in B for v in path[1:-1]):
        return "an inner vertex lies in B"
    for a, b in zip(path, path[1:]):
        if not are_adjacent(P, a, b):
            return f"{name_of(a)}-{name_of(b)} is not an edge"
    return None


def required_pairs(P: Presentation, B: VSet, top: int) -> list[tuple[VertexRef, VertexRef, str]]:
    """Pairs of B-vertices sharing a critical set and not adjacent, graded ones up to level ``top``."""
    out = []
    for pat in critical_sets(P):
        if isinstance(pat, ExplicitPattern):
            for x, y in itertools.combinations(sorted(pat.vertices), 2):
                if x in B and y in B and not are_adjacent(P, x, y):
                    out.append((x, y, "explicit"))
        else:
            for j in range(top + 1):
                if spine(j) not in B:
                    continue
                for i in pat.window.levels(j):
                    if i < j and spine(i) in B and not are_adjacent(P, spine(i), spine(j)):
                        out.append((spine(i), spine(j), "graded"))
    return sorted(set(out))


def linkage_edges(P: Presentation, L: Linkage, top: int) -> list[tuple[tuple[VertexRef, VertexRef], list[VertexRef]]]:
    """All linkage paths with graded pairs instantiated up to level ``top``."""
    out = list(L.paths)
    listed = {frozenset(p) for p, _ in L.paths}
    pats = critical_sets(P)
    for f in L.graded:
        for j in range(top + 1):
            for i in pats[f].window.levels(j):
                if i >= j or frozenset((spine(i), spine(j))) in listed:
                    continue
                if spine(i) not in L.B or spine(j) not in L.B or are_adjacent(P, spine(i), spine(j)):
                    continue
                path = L.rule_path(P, i, j)
                if path is not None:
                    out.append(((spine(i), spine(j)), path))
                    listed.add(frozenset((spine(i), spine(j))))
    return out


def verify_tough_subgraph(
    P: Presentation,
    U: TargetSet,
    cert: dict,
    depth: int = DEFAULT_DEPTH,
    copies: int = DEFAULT_COPIES,
    probe_size: int = 3,
    l2_size: int = 4,
) -> VerificationReport:
    rep = VerificationReport(instance=digest(P, U), certificate=cert_digest(cert))
    try:
        _tough(P, U, cert, rep, depth, copies, probe_size, l2_size)
    except _Reject:
        pass
    return rep.finish()


def _tough(P, U, c, rep, depth, copies, probe_size, l2_size) -> None:
    L = _parse_linkage(P, c, rep)
    B = L.B
    rep.add("partB.contains-U", U.as_vset(P).issubset(B), "")
    start, top = _window(P, U)
    top = max(top, depth)
    paths = linkage_edges(P, L, top)
    bad = [(p, _is_b_path(P, B, *p, path)) for p, path in paths]
    bad = [(p, why) for p, why in bad if why]
    rep.add(
        "paths.b-paths",
        not bad,
        "" if not bad else f"{name_of(bad[0][0][0])}-{name_of(bad[0][0][1])}: {bad[0][1]}",
    )
    have = {frozenset(p) for p, _ in paths}
    missing = [(x, y) for x, y, _ in required_pairs(P, B, top) if frozenset((x, y)) not in have]
    rep.add(
        "linkage.pairs-linked",
        not missing,
        "" if not missing else f"no B-path for {name_of(missing[0][0])}-{name_of(missing[0][1])}",
    )
    # degree bound: an off-B vertex at level j meets graded rule paths only through the
    # windows at level j, so its degree in L has a bound read off the rules
    deg: dict[VertexRef, set[VertexRef]] = {}
    for _, path in paths:
        for a, b in zip(path, path[1:]):
            deg.setdefault(a, set()).add(b)
            deg.setdefault(b, set()).add(a)
    pats = critical_sets(P)
    over = None
    for v, nb in sorted(deg.items()):
        if v in B:
            continue
        bound = 2 * len(L.paths)
        if v.kind == GRADED:
            bound += sum(len(pats[f].window.levels(v.level)) for f in L.graded)
        if len(nb) > bound:
            over = (v, len(nb), bound)
            break
    rep.add(
        "linkage.finite-degree",
        over is None,
        "" if over is None else f"{name_of(over[0])} has degree {over[1]} > {over[2]}",
    )
    _l2(P, B, paths, rep, l2_size)
    _probe(P, B, L, rep, depth, copies, probe_size, start)
    _torso(P, U, c, B, rep, min(depth, 8), copies)


def _l2(P: Presentation, B: VSet, paths, rep: VerificationReport, size: int) -> None:
    """Components of L - X that avoid B only use edges of paths with both ends in X."""
    verts = sorted({v for _, path in paths for v in path})
    idx = {v: i for i, v in enumerate(verts)}
    edges: dict[tuple[int, int], list[int]] = {}
    for k, (_, path) in enumerate(paths):
        for a, b in zip(path, path[1:]):
            e = (min(idx[a], idx[b]), max(idx[a], idx[b]))
            edges.setdefault(e, []).append(k)
    in_b = [v in B for v in verts]
    cand = [i for i, v in enumerate(verts) if in_b[i]]
    ends = [(idx[x], idx[y]) for (x, y), _ in paths]
    for r in range(1, size + 1):
        for X in itertools.combinations(cand, r):
            Xs = set(X)
            parent = list(range(len(verts)))

            def find(a: int) -> int:
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                return a

            for a, b in edges:
                if a not in Xs and b not in Xs:
                    parent[find(a)] = find(b)
            touches_b = {find(i) for i in range(len(verts)) if i not in Xs and in_b[i]}
            for (a, b), ks in edges.items():
                if a in Xs or b in Xs or find(a) in touches_b:
                    continue
                if not any(ends[k][0] in Xs and ends[k][1] in Xs for k in ks):
                    rep.add("linkage.covering-edges", False, f"X = {[name_of(verts[i]) for i in X]}")
                    return
    rep.add("linkage.covering-edges", True, f"all X within B on the linkage, |X| <= {size}")


def subgraph_h(P: Presentation, B: VSet, L: Linkage, d: int, m: int):
    """Truncation of H = G[B] + linkage at depth d with m copies."""
    T = materialize_truncation(P, d, m)
    keep = {v for v in T.names if v in B}
    extra = []
    for (x, y), path in linkage_edges(P, L, d):
        if all(v in T.index for v in path):
            keep.update(path)
            extra.extend(zip(path, path[1:]))
    base = [(T.names[a], T.names[b]) for a, b in T.edges if T.names[a] in B and T.names[b] in B]
    return T.subgraph(keep, base + extra)


def _probe(P, B, L, rep, d, m, size, start) -> None:
    """Deleting a few low vertices must not leave more components when the truncation grows."""
    m = max(m, B.copy_horizon() + 1)
    margin = P.max_span + 2
    d = max(d, start + margin)
    H1 = subgraph_h(P, B, L, d, m)
    H2 = subgraph_h(P, B, L, d + 2, m + 2)
    low = [v for v in H1.names if v.kind not in (SPINE, GRADED) or v.level <= d - margin]
    rows1, rows2 = [], []
    for r in range(0, size + 1):
        for X in itertools.combinations(low, r):
            rows1.append([H1.index[v] for v in X])
            rows2.append([H2.index[v] for v in X])
    z1 = np.zeros(H1.n, dtype=np.uint8)
    z2 = np.zeros(H2.n, dtype=np.uint8)
    c1 = _profile(H1, rows1, z1)
    c2 = _profile(H2, rows2, z2)
    grow = np.nonzero(c2[:, 0] > c1[:, 0])[0]
    if len(grow):
        k = int(grow[0])
        X = [name_of(H1.names[i]) for i in rows1[k]]
        rep.add("probe.toughness", False, f"deleting {X}: {c1[k, 0]} components at depth {d}, {c2[k, 0]} at {d + 2}")
    else:
        rep.add("probe.toughness", True, f"{len(rows1)} deleted sets, depth {d} vs {d + 2}")


def _profile(T, rows, umask) -> np.ndarray:
    indptr, indices = T.csr
    out = np.zeros((len(rows), 3), dtype=np.int32)
    empty = [i for i, r in enumerate(rows) if not r]
    for i in empty:
        out[i, 0] = kernels.components(indptr, indices, np.zeros(T.n, dtype=np.uint8))[1]
    rest = [i for i, r in enumerate(rows) if r]
    if rest:
        out[rest] = kernels.subset_profile(indptr, indices, [rows[i] for i in rest], umask)
    return out


def _torso(P, U, c, B, rep, d, m, samples: int = 60) -> None:
    """Connected vertex sets of a truncation meet B in a set connected in the torso of B."""
    try:
        A = assignment_from_json(P, c["assignment"])
    except (CombdualError, KeyError, TypeError, ValueError):
        rep.add("torso.connectivity", False, "assignment does not parse")
        return
    F = principal_family(P, U, A)
    T = materialize_truncation(P, d, m)
    inB = [v in B for v in T.names]
    tor: dict[int, set[int]] = {i: set() for i in range(T.n) if inB[i]}
    for a, b in T.edges:
        if inB[a] and inB[b]:
            tor[a].add(b)
            tor[b].add(a)
    for mem in F.instances(d):
        ids = [T.index[v] for v in mem.sep.sep if v in T.index and inB[T.index[v]]]
        for a, b in itertools.combinations(ids, 2):
            tor[a].add(b)
            tor[b].add(a)
    adj = T.adjacency()
    rng = random.Random(1729)
    for _ in range(samples):
        W = _random_connected(adj, rng, T.n)
        core = [i for i in W if inB[i]]
        if not core:
            continue
        seen = {core[0]}
        stack = [core[0]]
        allowed = set(core)
        while stack:
            a = stack.pop()
            for b in tor[a]:
                if b in allowed and b not in seen:
                    seen.add(b)
                    stack.append(b)
        if len(seen) != len(core):
            rep.add("torso.connectivity", False, f"W through {name_of(T.names[W[0]])}")
            return
    rep.add("torso.connectivity", True, f"{samples} connected samples at depth {d}")


def _random_connected(adj: list[list[int]], rng: random.Random, n: int) -> list[int]:
    s = rng.randrange(n)
    W = [s]
    seen = {s}
    for _ in range(rng.randint(1, 8)):
        v = rng.choice(W)
        if adj[v]:
            w = rng.choice(adj[v])
            if w not in seen:
                seen.add(w)
                W.append(w)
    return W


# -- star decomposition ----------------------------------------------------------------


def _parse_star(P: Presentation, c: dict, rep: VerificationReport) -> tuple[list[tuple[str, Sep]], list[dict]]:
    elems = []
    for row in _guard(rep, "elements.parse", lambda: list(c["elements"])):
        sep = frozenset(_guard(rep, "elements.parse", lambda: _vertices(P, row["separator"])))
        small = _guard(rep, "elements.parse", lambda: VSet.from_json(row["small"]))
        elems.append((str(row.get("label", "")), Sep(P, sep, small)))
    rules = _guard(rep, "rules.parse", lambda: [dict(r) for r in c.get("rules", [])])
    for r in rules:
        _guard(rep, "rules.parse", lambda: validate_rule(P, r))
    return elems, rules


def verify_star_decomposition(P: Presentation, U: TargetSet, cert: dict) -> VerificationReport:
    rep = VerificationReport(instance=digest(P, U), certificate=cert_digest(cert))
    try:
        _star(P, U, cert, rep)
    except _Reject:
        pass
    return rep.finish()


def _star(P: Presentation, U: TargetSet, c: dict, rep: VerificationReport) -> None:
    elems, rules = _parse_star(P, c, rep)
    start, top = _window(P, U)
    sigma = Family(P, U, elems, rules, start)
    top2 = top + P.max_span + 2
    mem = _guard(rep, "rules.instantiate", lambda: sigma.instances(top2))
    problems = []
    for m in mem:
        why = validity_problem(m.sep)
        if why is None and m.sep.small.is_empty():
            why = "empty small side"
        if why is None:
            loose = [v for v in m.sep.sep if neighbors(P, v).isdisjoint(m.sep.small)]
            if loose:
                why = f"separator vertex {name_of(min(loose))} has no neighbour on the small side"
        if why:
            problems.append(f"{m.label}: {why}")
    rep.add("elements.valid", not problems, problems[0] if problems else f"{len(mem)} elements up to level {top2}")
    star_bad = next(
        ((a.label, b.label) for a, b in itertools.combinations(mem, 2) if a.sep != b.sep and not le(a.sep, invert(b.sep))),
        None,
    )
    rep.add("star.property", star_bad is None, "" if star_bad is None else f"{star_bad[0]} / {star_bad[1]}")
    if rules:
        try:
            sigma.check_saturation()
            rep.add("star.saturation", True, f"window [{start}, {top}]")
        except CombdualError as e:
            rep.add("star.saturation", False, str(e))
    wild = next(((m.label, w) for m in mem for w in [tameness_problem(m.sep)] if w), None)
    rep.add("elements.tame", wild is None, "" if wild is None else f"{wild[0]}: {wild[1]}")
    try:
        part = sigma.part
    except CombdualError as e:
        rep.add("central.part", False, str(e))
        raise _Reject from None
    claimed = _guard(rep, "central.parse", lambda: VSet.from_json(c["centralPart"]))
    rep.add("central.part", claimed == part, "" if claimed == part else f"computed {part!r}")
    rep.add("central.contains-U", U.as_vset(P).issubset(part), "")
    _lives_in_leaf(P, mem, top, rep)
    if c.get("mode") == "parliament":
        _principal_check(P, U, c, sigma, mem, top, rep)


def _lives_in_leaf(P: Presentation, mem, top: int, rep: VerificationReport) -> None:
    for pat_i, pat in enumerate(critical_sets(P)):
        if isinstance(pat, ExplicitPattern):
            Xs = [pat.vertices]
        else:
            Xs = [pat.at(n) for n in range(top + 1) if pat.owns(n)]
        for X in Xs:
            hits = [m.label for m in mem if orientation_by(m.sep, X) == "small"]
            if len(hits) != 1:
                rep.add(
                    "critical.lives-in-leaf",
                    False,
                    f"{{{','.join(name_of(v) for v in sorted(X))}}} points into {len(hits)} leaves",
                )
                return
    rep.add("critical.lives-in-leaf", True, f"critical sets up to level {top}")


def principal_below_star(O_members, sigma_members) -> tuple[str, str] | None:
    """An O member with no sigma element it is lessish to, if any (label, reason)."""
    for s in O_members:
        if not any(lessish(s.sep, r.sep) for r in sigma_members):
            return s.label, "no element of the star lies above it up to one component"
    return None


def _principal_check(P, U, c, sigma, mem, top, rep) -> None:
    try:
        A = assignment_from_json(P, c["assignment"])
        O = principal_family(P, U, A)
        O_part = O.part
    except (CombdualError, KeyError, TypeError, ValueError) as e:
        rep.add("principal.part-covered", False, f"principal tree set not rebuilt: {e}")
        return
    rep.add("principal.part-covered", O_part.issubset(sigma.part), "")
    bad = principal_below_star(O.instances(top), mem)
    rep.add("principal.below-star", bad is None, "" if bad is None else f"{bad[0]}: {bad[1]}")


# -- admissible assignments ---------------------------------------------------------------


def verify_admissible(P: Presentation, doc: dict, U: TargetSet | None = None) -> VerificationReport:
    U = U if U is not None else TargetSet()
    rep = VerificationReport(instance=digest(P), certificate=cert_digest(doc))
    try:
        _admissible(P, U, doc, rep)
    except _Reject:
        pass
    return rep.finish()


def _admissible(P: Presentation, U: TargetSet, doc: dict, rep: VerificationReport) -> None:
    A = _guard(rep, "assignment.parse", lambda: assignment_from_json(P, doc))
    pats = critical_sets(P)
    want_e = {p.vertices for p in pats if isinstance(p, ExplicitPattern)}
    want_g = {i for i, p in enumerate(pats) if isinstance(p, GradedPattern)}
    got_e = [X for X, _ in A.explicit]
    rep.add(
        "assignment.covers",
        set(got_e) == want_e and len(got_e) == len(want_e) and set(A.graded) == want_g,
        f"{len(want_e)} explicit, {len(want_g)} graded",
    )
    _, top = _window(P, U)
    rows: list[tuple[frozenset, Any]] = list(A.explicit)
    for f in sorted(want_g):
        for n in range(top + 1):
            if pats[f].owns(n):
                X = pats[f].at(n)
                rows.append((X, default_exclusion(P, delete_and_decompose(P, X))))
    strong = []
    proper = []
    for X, e in rows:
        D = delete_and_decompose(P, X)
        full = full_components(D)
        if e is not None and not (e in full or (e[0] == "B" and ("B", e[1]) in full)):
            strong.append(X)
        s = choice_sep(P, make_choice(P, X, e, None))
        if s.small.is_empty() or s.big.is_empty():
            proper.append(X)
    rep.add("strong.one-excluded", not strong, "" if not strong else f"{sorted(map(name_of, strong[0]))}: excluded part is not a full component")
    rep.add("proper.choice", not proper, "" if not proper else f"{sorted(map(name_of, proper[0]))}")
    for (X, ex), (Y, ey) in itertools.combinations(rows, 2):
        if conflict(P, X, ex, Y, ey):
            rep.add(
                "admissible.pairs",
                False,
                f"{sorted(map(name_of, X))} and {sorted(map(name_of, Y))} both keep the component towards the other",
            )
            return
    rep.add("admissible.pairs", True, f"{len(rows)} critical sets up to level {top}")
