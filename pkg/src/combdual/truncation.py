"""Finite induced subgraphs of a presented graph, used by the brute-force oracles."""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .components import neighbors
from .errors import ResourceLimit
from .presentation import Presentation
from .vertices import VertexRef, fan_copy, graded_copy, kernel, name_of, spine

DEFAULT_BUDGET = 5000


def vertex_budget() -> int:
    return int(os.environ.get("COMBDUAL_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class Truncation:
    names: tuple[VertexRef, ...]
    edges: tuple[tuple[int, int], ...]
    depth: int
    copies: int

    @cached_property
    def index(self) -> dict[VertexRef, int]:
        return {v: i for i, v in enumerate(self.names)}

    @property
    def n(self) -> int:
        return len(self.names)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        deg = np.zeros(self.n + 1, dtype=np.int32)
        for a, b in self.edges:
            deg[a + 1] += 1
            deg[b + 1] += 1
        indptr = np.cumsum(deg, dtype=np.int32)
        indices = np.empty(indptr[-1], dtype=np.int32)
        fill = indptr[:-1].copy()
        for a, b in self.edges:
            indices[fill[a]] = b
            fill[a] += 1
            indices[fill[b]] = a
            fill[b] += 1
        return indptr, indices

    def adjacency(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            nb[a].append(b)
            nb[b].append(a)
        return nb

    def subgraph(self, keep: Iterable[VertexRef], edges: Iterable[tuple[VertexRef, VertexRef]] | None = None) -> "Truncation":
        """Induced (or edge-restricted) subgraph on ``keep``, renumbered canonically."""
        names = tuple(sorted(set(keep)))
        idx = {v: i for i, v in enumerate(names)}
        if edges is None:
            es = [
                (idx[self.names[a]], idx[self.names[b]])
                for a, b in self.edges
                if self.names[a] in idx and self.names[b] in idx
            ]
        else:
            es = [(idx[u], idx[v]) for u, v in edges if u in idx and v in idx]
        es = sorted({(min(a, b), max(a, b)) for a, b in es if a != b})
        return Truncation(names, tuple(es), self.depth, self.copies)

    def to_dot(self) -> str:
        lines = ["graph truncation {"]
        for v in self.names:
            lines.append(f'  "{name_of(v)}";')
        for a, b in self.edges:
            lines.append(f'  "{name_of(self.names[a])}" -- "{name_of(self.names[b])}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "copies": self.copies,
            "vertices": [name_of(v) for v in self.names],
            "edges": [[a, b] for a, b in self.edges],
        }


def truncation_size(P: Presentation, d: int, m: int) -> int:
    size = P.kernel.n + (d + 1 if P.has_spine else 0)
    size += m * sum(c.template.n for c in P.fan)
    size += (d + 1) * m * sum(g.template.n for g in P.graded)
    return size


def truncation_vertices(P: Presentation, d: int, m: int) -> list[VertexRef]:
    out = [kernel(i) for i in range(P.kernel.n)]
    if P.has_spine:
        out += [spine(l) for l in range(d + 1)]
    for c, fc in enumerate(P.fan):
        out += [fan_copy(c, i, j) for i in range(m) for j in range(fc.template.n)]
    for g, gc in enumerate(P.graded):
        out += [
            graded_copy(g, n, i, j)
            for n in range(d + 1)
            for i in range(m)
            for j in range(gc.template.n)
        ]
    return sorted(out)


def materialize_truncation(
    P: Presentation, d: int, m: int, budget: int | None = None
) -> Truncation:
    if d < 0 or m < 1:
        raise ValueError("depth must be >= 0 and copies >= 1")
    budget = vertex_budget() if budget is None else budget
    size = truncation_size(P, d, m)
    if size > budget:
        raise ResourceLimit(f"truncation d={d} m={m} has {size} vertices, budget {budget}")
    names = truncation_vertices(P, d, m)
    idx = {v: i for i, v in enumerate(names)}
    edges = set()
    for v in names:
        nb = neighbors(P, v)
        for w in nb.vertices(d, m):
            j = idx.get(w)
            if j is not None and j != idx[v]:
                a, b = idx[v], j
                edges.add((min(a, b), max(a, b)))
    return Truncation(tuple(names), tuple(sorted(edges)), d, m)
