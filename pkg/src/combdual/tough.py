"""A tough subgraph containing U: the part of the principal tree set plus a linkage.

The linkage joins every two part vertices that lie together in a critical
set by a path whose inner vertices avoid the part.  Explicit pairs are routed
greedily on a truncation, charging one for every edge not already used by an
earlier path; graded spine pairs follow a closed-form rule through one copy
at the higher level, so the verifier can re-derive them for any level.
"""
from __future__ import annotations

import heapq
import itertools

from .admissible import Assignment, build_principal_tree_set
from .components import ExplicitPattern, GradedPattern, are_adjacent, critical_sets
from .errors import NoBPath
from .presentation import Presentation, TargetSet
from .truncation import materialize_truncation
from .vertices import SPINE, VertexRef, graded_copy, name_of, spine
from .vset import VSet


def critical_pairs_explicit(P: Presentation, B: VSet) -> list[tuple[VertexRef, VertexRef]]:
    pairs = set()
    for pat in critical_sets(P):
        if isinstance(pat, ExplicitPattern):
            for x, y in itertools.combinations(sorted(pat.vertices), 2):
                if x in B and y in B:
                    pairs.add((x, y))
    return sorted(pairs, key=lambda p: (p[1], p[0]))


def graded_pairs_at(P: Presentation, f: int, j: int, B: VSet) -> list[tuple[VertexRef, VertexRef]]:
    """Pairs ``{s_i, s_j}`` (i < j) inside the level-j instance of family ``f``."""
    pat = critical_sets(P)[f]
    if spine(j) not in B:
        return []
    return [
        (spine(i), spine(j))
        for i in pat.window.levels(j)
        if i < j and spine(i) in B
    ]


def designated_copy(P: Presentation, B: VSet, i: int, j: int) -> VertexRef | None:
    """Least class whose level-j window holds i, least copy outside B, least attachment local."""
    for g, gc in enumerate(P.graded):
        if i not in gc.window.levels(j):
            continue
        loc = min(gc.attach_locals)
        for c in itertools.count():
            v = graded_copy(g, j, c, loc)
            if v not in B:
                return v
    return None


def graded_rule_path(P: Presentation, B: VSet, i: int, j: int) -> list[VertexRef] | None:
    v = designated_copy(P, B, i, j)
    return None if v is None else [spine(i), v, spine(j)]


def _edge(a: VertexRef, b: VertexRef) -> tuple[VertexRef, VertexRef]:
    return (a, b) if a < b else (b, a)


def greedy_path(
    adj: dict[VertexRef, list[VertexRef]],
    B: VSet,
    x: VertexRef,
    y: VertexRef,
    used: set[tuple[VertexRef, VertexRef]],
) -> list[VertexRef] | None:
    """B-path from x to y with fewest new edges, ties to the least vertex sequence."""
    heap: list[tuple[int, tuple[VertexRef, ...]]] = [(0, (x,))]
    done: set[VertexRef] = set()
    while heap:
        cost, path = heapq.heappop(heap)
        v = path[-1]
        if v == y:
            return list(path)
        if v in done:
            continue
        done.add(v)
        for w in adj.get(v, ()):
            if w in path or w in done:
                continue
            if w != y and w in B:
                continue
            step = 0 if _edge(v, w) in used else 1
            heapq.heappush(heap, (cost + step, path + (w,)))
    return None


def build_tough_subgraph(P: Presentation, U: TargetSet) -> dict:
    A, F = build_principal_tree_set(P, U)
    B = F.part | VSet.of(U.explicit)
    return linkage_payload(P, U, A, B, F.start)


def linkage_payload(P: Presentation, U: TargetSet, A: Assignment, B: VSet, start: int) -> dict:
    pairs = [p for p in critical_pairs_explicit(P, B) if not are_adjacent(P, *p)]
    paths = []
    if pairs:
        top = max([v.level for p in pairs for v in p if v.kind == SPINE] + [0])
        depth = top + P.max_span + 2
        copies = B.copy_horizon() + 3
        T = materialize_truncation(P, depth, copies)
        adj: dict[VertexRef, list[VertexRef]] = {v: [] for v in T.names}
        for a, b in T.edges:
            adj[T.names[a]].append(T.names[b])
            adj[T.names[b]].append(T.names[a])
        for v in adj:
            adj[v].sort()
        used: set[tuple[VertexRef, VertexRef]] = set()
        for x, y in pairs:
            path = greedy_path(adj, B, x, y, used)
            if path is None:
                raise NoBPath(f"no B-path between {name_of(x)} and {name_of(y)}")
            used.update(_edge(a, b) for a, b in zip(path, path[1:]))
            paths.append({"pair": [name_of(x), name_of(y)], "path": [name_of(v) for v in path]})
    graded = [i for i, pat in enumerate(critical_sets(P)) if isinstance(pat, GradedPattern)]
    for f in graded:
        for j in range(2 * start + 3):
            for x, y in graded_pairs_at(P, f, j, B):
                if not are_adjacent(P, x, y) and graded_rule_path(P, B, x.level, j) is None:
                    raise NoBPath(f"no designated copy for {name_of(x)}-{name_of(y)}")
    return {
        "partB": B.to_json(),
        "assignment": A.to_json(P),
        "paths": paths,
        "gradedLinkage": [{"family": f} for f in graded],
    }
