"""Neighbourhoods, components after finite deletions, and critical vertex sets."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import InvalidVertex
from .presentation import Presentation, Window
from .selectors import LevelSel, Sel
from .vertices import FAN, GRADED, KERNEL, SPINE, VertexRef, class_name, kernel, spine
from .vset import VSet


def neighbors(P: Presentation, v: VertexRef) -> VSet:
    P.check_vertex(v)
    if v.kind == KERNEL:
        out = VSet.of(kernel(w) for w in P.kernel.adj[v.local])
        if P.spine_anchor == v.local:
            out = out | VSet.of([spine(0)])
        fan = {}
        for c, fc in enumerate(P.fan):
            for loc, a in fc.attachments:
                if a == v:
                    fan[(c, loc)] = Sel.all()
        return out | VSet.make(fan=fan)
    if v.kind == SPINE:
        lvl = v.level
        nb = []
        if P.spine_edges:
            nb = [spine(lvl + 1)] + ([spine(lvl - 1)] if lvl > 0 else [])
        if lvl == 0 and P.spine_anchor is not None:
            nb.append(kernel(P.spine_anchor))
        fan = {}
        for c, fc in enumerate(P.fan):
            for loc, a in fc.attachments:
                if a == v:
                    fan[(c, loc)] = Sel.all()
        graded = {}
        for g, gc in enumerate(P.graded):
            lo, hi = gc.window.levels_containing(lvl)
            if hi is None:
                ls = LevelSel.from_level(lo)
            else:
                ls = LevelSel.make([Sel.none()] * lo + [Sel.all()] * (hi - lo + 1), Sel.none())
            for loc in gc.attach_locals:
                graded[(g, loc)] = ls
        return VSet.of(nb) | VSet.make(fan=fan, graded=graded)
    if v.kind == FAN:
        fc = P.fan[v.cls]
        nb = [v._replace(local=w) for w in fc.template.adj[v.local]]
        nb.extend(fc.anchors[v.local])
        return VSet.of(nb)
    gc = P.graded[v.cls]
    nb = [v._replace(local=w) for w in gc.template.adj[v.local]]
    if v.local in gc.attach_locals:
        nb.extend(spine(m) for m in gc.window.levels(v.level))
    return VSet.of(nb)


def are_adjacent(P: Presentation, u: VertexRef, v: VertexRef) -> bool:
    return v in neighbors(P, u)


# -- component decompositions -------------------------------------------------


@dataclass(frozen=True)
class Component:
    vertices: VSet
    neighbourhood: frozenset[VertexRef]
    label: VertexRef


@dataclass(frozen=True)
class Bundle:
    """Infinitely many whole-copy components sharing one neighbourhood."""

    kind: int
    cls: int
    level: int | None
    copies: Sel
    neighbourhood: frozenset[VertexRef]

    @property
    def class_id(self) -> str:
        return class_name(self.kind, self.cls)

    def copy_vset(self, P: Presentation, i: int) -> VSet:
        return P.copy_vset(self.kind, self.cls, self.level, Sel.only([i]))

    def vset(self, P: Presentation, copies: Sel | None = None) -> VSet:
        return P.copy_vset(self.kind, self.cls, self.level, self.copies if copies is None else copies)

    def owns(self, v: VertexRef) -> bool:
        return (
            v.kind == self.kind
            and v.cls == self.cls
            and (self.level is None or v.level == self.level)
            and v.copy in self.copies
        )


@dataclass(frozen=True)
class ComponentDecomposition:
    deleted: frozenset[VertexRef]
    explicit: tuple[Component, ...]
    bundles: tuple[Bundle, ...]
    tail_index: int | None
    saturation: int

    def locate(self, v: VertexRef) -> tuple | None:
        """``("E", i)`` or ``("B", i, copy)`` for the component holding ``v``; None if deleted."""
        if v in self.deleted:
            return None
        for i, b in enumerate(self.bundles):
            if b.owns(v):
                return ("B", i, v.copy)
        for i, c in enumerate(self.explicit):
            if v in c.vertices:
                return ("E", i)
        raise InvalidVertex(f"{v!r} not found in any component")

    def component_vset(self, P: Presentation, loc: tuple) -> VSet:
        if loc[0] == "E":
            return self.explicit[loc[1]].vertices
        return self.bundles[loc[1]].copy_vset(P, loc[2])

    def neighbourhood_of(self, loc: tuple) -> frozenset[VertexRef]:
        if loc[0] == "E":
            return self.explicit[loc[1]].neighbourhood
        return self.bundles[loc[1]].neighbourhood

    def component_of(self, P: Presentation, v: VertexRef) -> VSet | None:
        loc = self.locate(v)
        return None if loc is None else self.component_vset(P, loc)

    @property
    def infinitely_many(self) -> bool:
        return bool(self.bundles)

    def full_bundles(self) -> list[Bundle]:
        return [b for b in self.bundles if b.neighbourhood == self.deleted]

    def all_vset(self, P: Presentation) -> VSet:
        out = VSet.empty()
        for c in self.explicit:
            out = out | c.vertices
        for b in self.bundles:
            out = out | b.vset(P)
        return out


class _UF:
    def __init__(self) -> None:
        self.parent: dict = {}

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _levels_of(vs: Iterable[VertexRef]) -> list[int]:
    return [v.level for v in vs if v.kind in (SPINE, GRADED)]


def delete_and_decompose(P: Presentation, X: Iterable[VertexRef]) -> ComponentDecomposition:
    X = frozenset(X)
    for v in X:
        P.check_vertex(v)
    return _decompose(P, X)


@lru_cache(maxsize=8192)
def _decompose(P: Presentation, X: frozenset[VertexRef]) -> ComponentDecomposition:
    top = P.saturation(_levels_of(X))
    tail_node = spine(top) if P.has_spine else None

    def node(v: VertexRef) -> VertexRef:
        if v.kind == SPINE and v.level >= top:
            return tail_node  # type: ignore[return-value]
        return v

    uf = _UF()
    for i in range(P.kernel.n):
        if kernel(i) not in X:
            uf.add(kernel(i))
    if P.has_spine:
        for lvl in range(top + 1):
            if spine(lvl) not in X:
                uf.add(spine(lvl))
        for lvl in range(top if P.spine_edges else 0):
            if spine(lvl) not in X and spine(lvl + 1) not in X:
                uf.union(spine(lvl), spine(lvl + 1))
        if P.spine_anchor is not None:
            a = kernel(P.spine_anchor)
            if a not in X and spine(0) not in X:
                uf.union(a, spine(0))
    for a, b in P.kernel.edges:
        if kernel(a) not in X and kernel(b) not in X:
            uf.union(kernel(a), kernel(b))

    materialized: dict[tuple[int, int, int], set[int]] = {}
    for v in X:
        if v.is_copy:
            materialized.setdefault((v.kind, v.cls, v.level), set()).add(v.copy)

    def mat(kind: int, cls: int, level: int) -> frozenset[int]:
        return frozenset(materialized.get((kind, cls, level if kind == GRADED else 0), ()))

    # fan classes: nonmaterialized copies join their live anchors
    for c, fc in enumerate(P.fan):
        live = sorted({node(a) for a in fc.att if a not in X})
        for w in live[1:]:
            uf.union(live[0], w)
    # graded classes, levels 0..top+1 (beyond that everything sits in the tail)
    for g, gc in enumerate(P.graded):
        for n in range(top + 2):
            live = sorted({node(spine(m)) for m in gc.window.levels(n) if spine(m) not in X})
            for w in live[1:]:
                uf.union(live[0], w)

    # pieces of materialised copies
    pieces: list[tuple[VertexRef, list[VertexRef]]] = []
    for (kind, cls, level), idxs in sorted(materialized.items()):
        tmpl = P.fan[cls].template if kind == FAN else P.graded[cls].template
        for i in sorted(idxs):
            gone = [v.local for v in X if v.is_copy and v.copy_key == (kind, cls, level, i)]
            for piece in tmpl.pieces(gone):
                verts = [VertexRef(kind, cls, level, i, j) for j in piece]
                rep = verts[0]
                uf.add(rep)
                for v in verts:
                    if kind == FAN:
                        targets = P.fan[cls].anchors[v.local]
                    elif v.local in P.graded[cls].attach_locals:
                        targets = tuple(spine(m) for m in P.graded[cls].window.levels(level))
                    else:
                        targets = ()
                    for t in targets:
                        if t not in X:
                            uf.union(rep, node(t))
                pieces.append((rep, verts))

    groups: dict[VertexRef, dict] = {}

    def group(root: VertexRef) -> dict:
        return groups.setdefault(
            root, {"kernel": set(), "spine": set(), "tail": False, "fan": {}, "graded": {}, "extra": []}
        )

    for x in list(uf.parent):
        r = uf.find(x)
        gr = group(r)
        if x.kind == KERNEL:
            gr["kernel"].add(x.local)
        elif x.kind == SPINE:
            if x == tail_node:
                gr["tail"] = True
            else:
                gr["spine"].add(x.level)
    for rep, verts in pieces:
        group(uf.find(rep))["extra"].extend(verts)

    bundles: list[Bundle] = []
    for c, fc in enumerate(P.fan):
        live = [a for a in fc.att if a not in X]
        excl = mat(FAN, c, 0)
        sel = Sel.all_but(excl)
        if live:
            gr = group(uf.find(node(min(live))))
            for loc in range(fc.template.n):
                gr["fan"][(c, loc)] = sel
        else:
            bundles.append(Bundle(FAN, c, None, sel, frozenset(fc.att)))
    for g, gc in enumerate(P.graded):
        for n in range(top + 1):
            live = [spine(m) for m in gc.window.levels(n) if spine(m) not in X]
            sel = Sel.all_but(mat(GRADED, g, n))
            if live:
                gr = group(uf.find(node(live[0])))
                gr["graded"].setdefault(g, {})[n] = sel
            else:
                bundles.append(
                    Bundle(GRADED, g, n, sel, frozenset(spine(m) for m in gc.window.levels(n)))
                )
        if tail_node is not None:
            group(uf.find(tail_node))["graded"].setdefault(g, {})["tail"] = Sel.all()

    explicit: list[Component] = []
    for gr in groups.values():
        if gr["tail"]:
            sp = Sel.all_but(set(range(top)) - gr["spine"])
        else:
            sp = Sel.only(gr["spine"])
        graded = {}
        for g, per in gr["graded"].items():
            tail = per.pop("tail", Sel.none())
            ls = LevelSel.make((per.get(n, Sel.none()) for n in range(top + 1)), tail)
            for loc in range(P.graded[g].template.n):
                graded[(g, loc)] = ls
        vs = VSet.make(gr["kernel"], sp, gr["fan"], graded) | VSet.of(gr["extra"])
        members = [kernel(i) for i in gr["kernel"]] + [spine(l) for l in gr["spine"]]
        if gr["tail"]:
            members.append(tail_node)
        members += gr["extra"]
        explicit.append(Component(vs, frozenset(), min(members)))

    explicit.sort(key=lambda c: c.label)
    nbs: list[set[VertexRef]] = [set() for _ in explicit]
    for x in X:
        nx = neighbors(P, x)
        for i, comp in enumerate(explicit):
            if not nx.isdisjoint(comp.vertices):
                nbs[i].add(x)
    explicit = [Component(c.vertices, frozenset(nb), c.label) for c, nb in zip(explicit, nbs)]
    tail_index = None
    if tail_node is not None:
        tail_index = next(i for i, c in enumerate(explicit) if tail_node in c.vertices)
    return ComponentDecomposition(X, tuple(explicit), tuple(bundles), tail_index, top)


# -- critical vertex sets ---------------------------------------------------------


@dataclass(frozen=True)
class ExplicitPattern:
    vertices: frozenset[VertexRef]
    witnesses: tuple[str, ...]

    def describe(self) -> str:
        return "{" + ", ".join(str(v) for v in sorted(self.vertices)) + "}"


@dataclass(frozen=True)
class GradedPattern:
    family: int
    window: Window
    classes: tuple[int, ...]
    skipped: frozenset[int]

    def at(self, n: int) -> frozenset[VertexRef]:
        return frozenset(spine(m) for m in self.window.levels(n))

    def owns(self, n: int) -> bool:
        return n >= 0 and n not in self.skipped

    @property
    def witnesses(self) -> tuple[str, ...]:
        return tuple(f"g{g}" for g in self.classes)

    def describe(self) -> str:
        if self.window.kind == "prefix":
            return "X(n) = {s0..sn}, n >= 0"
        return f"X(n) = {{s(n-{self.window.width - 1})..sn}} (band {self.window.width}), n >= 0"


CriticalPattern = ExplicitPattern | GradedPattern


@dataclass(frozen=True, order=True)
class CritInstance:
    """One critical vertex set; ``key`` is ("E", i) or ("G", family, n)."""

    key: tuple
    X: frozenset[VertexRef]

    @property
    def level(self) -> int | None:
        return self.key[2] if self.key[0] == "G" else None

    def name(self) -> str:
        return f"E{self.key[1]}" if self.key[0] == "E" else f"G{self.key[1]}({self.key[2]})"


@lru_cache(maxsize=256)
def critical_sets(P: Presentation) -> tuple[CriticalPattern, ...]:
    fams: dict[Window, list[int]] = {}
    for g, gc in enumerate(P.graded):
        fams.setdefault(gc.window, []).append(g)
    windows = sorted(fams, key=Window.sort_key)

    def graded_instance(X: frozenset[VertexRef]) -> tuple[int, int] | None:
        if not X or any(v.kind != SPINE for v in X):
            return None
        lv = sorted(v.level for v in X)
        if lv != list(range(lv[0], lv[-1] + 1)):
            return None
        for f, w in enumerate(windows):
            if w.lo(lv[-1]) == lv[0]:
                return f, lv[-1]
        return None

    graded = []
    for f, w in enumerate(windows):
        skipped = set()
        # band instances n < width coincide with earlier windows' instances at the same n
        for n in range(max(ww.span for ww in windows) + 1):
            if any(windows[e].lo(n) == w.lo(n) for e in range(f)):
                skipped.add(n)
        graded.append(GradedPattern(f, w, tuple(fams[w]), frozenset(skipped)))

    explicit: dict[frozenset[VertexRef], list[str]] = {}
    for c, fc in enumerate(P.fan):
        if graded_instance(fc.att) is None:
            explicit.setdefault(fc.att, []).append(f"c{c}")
    out: list[CriticalPattern] = [
        ExplicitPattern(X, tuple(wit)) for X, wit in sorted(explicit.items(), key=lambda kv: sorted(kv[0]))
    ]
    return tuple(out) + tuple(graded)


def critical_instances(P: Presentation, upto: int) -> list[CritInstance]:
    """Explicit critical sets plus graded instances with level <= ``upto``."""
    out = []
    for i, pat in enumerate(critical_sets(P)):
        if isinstance(pat, ExplicitPattern):
            out.append(CritInstance(("E", i), pat.vertices))
        else:
            for n in range(upto + 1):
                if pat.owns(n):
                    out.append(CritInstance(("G", i, n), pat.at(n)))
    return out


def instance_for(P: Presentation, key: tuple) -> CritInstance:
    pat = critical_sets(P)[key[1]]
    if key[0] == "E":
        return CritInstance(key, pat.vertices)
    return CritInstance(key, pat.at(key[2]))


def is_critical(P: Presentation, X: Iterable[VertexRef]) -> bool:
    D = delete_and_decompose(P, X)
    return bool(D.full_bundles())
