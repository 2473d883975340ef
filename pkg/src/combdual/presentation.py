"""Finite presentations of countably infinite graphs and the ``combdual/1`` format."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import Any, Iterable

from .errors import InvalidInstance, InvalidVertex, ParseError
from .selectors import LevelSel, Sel
from .vertices import (
    FAN,
    GRADED,
    KERNEL,
    SPINE,
    VertexRef,
    class_name,
    name_of,
    parse_class_name,
    parse_vertex,
)
from .vset import VSet

FORMAT = "combdual/1"


@dataclass(frozen=True)
class FiniteGraph:
    n: int
    edges: frozenset[tuple[int, int]]

    @staticmethod
    def build(n: int, edges: Iterable[Iterable[int]]) -> "FiniteGraph":
        es = set()
        for e in edges:
            a, b = (int(x) for x in e)
            if a == b:
                raise InvalidInstance(f"loop at {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise InvalidInstance(f"edge {a}-{b} out of range for {n} vertices")
            es.add((min(a, b), max(a, b)))
        return FiniteGraph(n, frozenset(es))

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nb: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            nb[a].append(b)
            nb[b].append(a)
        return tuple(tuple(sorted(x)) for x in nb)

    def pieces(self, removed: Iterable[int] = ()) -> list[list[int]]:
        """Connected components of the graph minus ``removed``, each sorted."""
        gone = set(removed)
        seen = set(gone)
        out = []
        for s in range(self.n):
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def connected(self) -> bool:
        return self.n > 0 and len(self.pieces()) == 1

    def shortest_path(self, sources: Iterable[int], targets: Iterable[int]) -> list[int] | None:
        """BFS path, ties broken towards lexicographically least vertex sequence."""
        tgt = set(targets)
        best: list[int] | None = None
        for s in sorted(set(sources)):
            prev = {s: None}
            frontier = [s]
            found = s if s in tgt else None
            while frontier and found is None:
                nxt = []
                for v in frontier:
                    for w in self.adj[v]:
                        if w not in prev:
                            prev[w] = v
                            nxt.append(w)
                hits = sorted(w for w in nxt if w in tgt)
                if hits:
                    found = hits[0]
                frontier = nxt
            if found is None:
                continue
            path = [found]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            path.reverse()
            if best is None or (len(path), path) < (len(best), best):
                best = path
        return best

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}


@dataclass(frozen=True)
class Window:
    """Spine levels joined to a level-n copy: ``{0..n}`` or the last ``width`` levels."""

    kind: str  # "prefix" | "band"
    width: int = 0

    def lo(self, n: int) -> int:
        return 0 if self.kind == "prefix" else max(0, n - self.width + 1)

    def levels(self, n: int) -> range:
        return range(self.lo(n), n + 1)

    def levels_containing(self, lvl: int) -> tuple[int, int | None]:
        """Copy levels n whose window contains spine level ``lvl``: [lo, hi], hi None = infinity."""
        if self.kind == "prefix":
            return lvl, None
        return lvl, lvl + self.width - 1

    @property
    def span(self) -> int:
        return self.width if self.kind == "band" else 1

    def sort_key(self) -> tuple[int, int]:
        return (0, 0) if self.kind == "prefix" else (1, self.width)

    def to_json(self) -> Any:
        return "prefix" if self.kind == "prefix" else {"band": self.width}


@dataclass(frozen=True)
class FanClass:
    template: FiniteGraph
    attachments: tuple[tuple[int, VertexRef], ...]

    @cached_property
    def att(self) -> frozenset[VertexRef]:
        return frozenset(a for _, a in self.attachments)

    @cached_property
    def anchors(self) -> tuple[tuple[VertexRef, ...], ...]:
        """Anchors per template local."""
        out: list[list[VertexRef]] = [[] for _ in range(self.template.n)]
        for loc, a in self.attachments:
            out[loc].append(a)
        return tuple(tuple(sorted(set(x))) for x in out)


@dataclass(frozen=True)
class GradedClass:
    template: FiniteGraph
    window: Window
    attach_locals: frozenset[int]


@dataclass(frozen=True)
class Presentation:
    kernel: FiniteGraph
    has_spine: bool
    spine_anchor: int | None
    fan: tuple[FanClass, ...] = ()
    graded: tuple[GradedClass, ...] = ()
    name: str = field(default="", compare=False)
    spine_edges: bool = True

    # -- validation -------------------------------------------------------
    def validate(self) -> None:
        if self.graded and not self.has_spine:
            raise InvalidInstance("graded classes require a spine")
        if self.kernel.n == 0 and not self.has_spine:
            raise InvalidInstance("presentation has no kernel and no spine")
        if self.spine_anchor is not None:
            if not self.has_spine:
                raise InvalidInstance("spine anchor given without a spine")
            if not 0 <= self.spine_anchor < self.kernel.n:
                raise InvalidInstance(f"spine anchor k{self.spine_anchor} out of range")
        if self.kernel.n and self.has_spine and self.spine_anchor is None:
            raise InvalidInstance("kernel and spine present but no spine anchor")
        if self.has_spine and not self.spine_edges and not any(
            g.window.kind == "prefix" or g.window.width >= 2 for g in self.graded
        ):
            # nothing else links consecutive spine levels
            raise InvalidInstance("edgeless spine needs a graded class with overlapping windows")
        for ci, c in enumerate(self.fan):
            where = f"fanClasses[{ci}]"
            if not c.template.connected():
                raise InvalidInstance(f"{where}: template must be connected and nonempty")
            if not c.attachments:
                raise InvalidInstance(f"{where}: empty attachment set")
            for loc, a in c.attachments:
                if not 0 <= loc < c.template.n:
                    raise InvalidInstance(f"{where}: local {loc} out of range")
                if a.kind == SPINE and not self.has_spine:
                    raise InvalidInstance(f"{where}: spine anchor without spine")
                if a.kind == KERNEL and not 0 <= a.local < self.kernel.n:
                    raise InvalidInstance(f"{where}: anchor {name_of(a)} out of range")
                if a.kind not in (KERNEL, SPINE):
                    raise InvalidInstance(f"{where}: anchors must be kernel or spine vertices")
        for gi, g in enumerate(self.graded):
            where = f"gradedClasses[{gi}]"
            if not g.template.connected():
                raise InvalidInstance(f"{where}: template must be connected and nonempty")
            if not g.attach_locals:
                raise InvalidInstance(f"{where}: empty attachmentLocals")
            if any(not 0 <= x < g.template.n for x in g.attach_locals):
                raise InvalidInstance(f"{where}: attachment local out of range")
            if g.window.kind == "band" and g.window.width < 1:
                raise InvalidInstance(f"{where}: band width must be positive")
        self._check_connected()

    def _check_connected(self) -> None:
        # kernel vertices 0..n-1, spine token n
        n = self.kernel.n
        parent = list(range(n + 1))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def join(a: int, b: int) -> None:
            parent[find(a)] = find(b)

        for a, b in self.kernel.edges:
            join(a, b)
        if self.spine_anchor is not None:
            join(self.spine_anchor, n)
        for c in self.fan:
            toks = [a.local if a.kind == KERNEL else n for a in c.att]
            for t in toks[1:]:
                join(toks[0], t)
        nodes = list(range(n)) + ([n] if self.has_spine else [])
        if len({find(x) for x in nodes}) > 1:
            raise InvalidInstance("presented graph is disconnected")

    # -- derived data ---------------------------------------------------------
    @cached_property
    def max_span(self) -> int:
        return max((g.window.span for g in self.graded), default=1)

    @cached_property
    def anchor_levels(self) -> tuple[int, ...]:
        return tuple(sorted({a.level for c in self.fan for a in c.att if a.kind == SPINE}))

    def saturation(self, levels: Iterable[int] = ()) -> int:
        """Level beyond which all level-indexed behaviour is constant."""
        top = max([*levels, *self.anchor_levels, 0])
        return top + self.max_span + 2

    def check_vertex(self, v: VertexRef) -> None:
        ok = True
        if v.kind == KERNEL:
            ok = 0 <= v.local < self.kernel.n
        elif v.kind == SPINE:
            ok = self.has_spine and v.level >= 0
        elif v.kind == FAN:
            ok = 0 <= v.cls < len(self.fan) and 0 <= v.local < self.fan[v.cls].template.n
            ok = ok and v.copy >= 0
        elif v.kind == GRADED:
            ok = 0 <= v.cls < len(self.graded) and 0 <= v.local < self.graded[v.cls].template.n
            ok = ok and v.copy >= 0 and v.level >= 0
        else:
            ok = False
        if not ok:
            raise InvalidVertex(f"{v!r} is not a vertex of this presentation")

    @cached_property
    def universe(self) -> VSet:
        return VSet.make(
            range(self.kernel.n),
            Sel.all() if self.has_spine else Sel.none(),
            {(c, loc): Sel.all() for c, fc in enumerate(self.fan) for loc in range(fc.template.n)},
            {
                (g, loc): LevelSel.all()
                for g, gc in enumerate(self.graded)
                for loc in range(gc.template.n)
            },
        )

    def copy_vertices(self, kind: int, cls: int, level: int, copy: int) -> list[VertexRef]:
        t = self.fan[cls].template if kind == FAN else self.graded[cls].template
        return [VertexRef(kind, cls, level if kind == GRADED else 0, copy, j) for j in range(t.n)]

    def copy_vset(self, kind: int, cls: int, level: int | None, copies: Sel) -> VSet:
        if kind == FAN:
            t = self.fan[cls].template
            return VSet.make(fan={(cls, j): copies for j in range(t.n)})
        t = self.graded[cls].template
        assert level is not None
        return VSet.make(graded={(cls, j): LevelSel.at_level(level, copies) for j in range(t.n)})

    def _spine_json(self) -> dict:
        d = {"present": self.has_spine, "anchor": self.spine_anchor}
        if not self.spine_edges:
            d["edges"] = False
        return d

    def to_json(self) -> dict:
        return {
            "kernel": self.kernel.to_json(),
            "spine": self._spine_json(),
            "fanClasses": [
                {
                    "template": c.template.to_json(),
                    "attachments": [[loc, name_of(a)] for loc, a in c.attachments],
                }
                for c in self.fan
            ],
            "gradedClasses": [
                {
                    "template": g.template.to_json(),
                    "window": g.window.to_json(),
                    "attachmentLocals": sorted(g.attach_locals),
                }
                for g in self.graded
            ],
        }


@dataclass(frozen=True)
class TargetSet:
    explicit: frozenset[VertexRef] = frozenset()
    masks: tuple[tuple[tuple[int, int], frozenset[int]], ...] = ()
    spine_from: int | None = None

    def validate(self, P: Presentation) -> None:
        for v in self.explicit:
            try:
                P.check_vertex(v)
            except InvalidVertex as e:
                raise InvalidInstance(f"target: {e}") from None
        for (kind, cls), locs in self.masks:
            classes = P.fan if kind == FAN else P.graded
            if not 0 <= cls < len(classes):
                raise InvalidInstance(f"target: unknown class {class_name(kind, cls)}")
            if any(not 0 <= x < classes[cls].template.n for x in locs):
                raise InvalidInstance(f"target: mask of {class_name(kind, cls)} out of range")
        if self.spine_from is not None and not P.has_spine:
            raise InvalidInstance("target: spineCofinalFrom needs a spine")

    @property
    def has_masks(self) -> bool:
        return any(locs for _, locs in self.masks)

    @property
    def is_finite(self) -> bool:
        return self.spine_from is None and not self.has_masks

    def as_vset(self, P: Presentation) -> VSet:
        fan: dict[tuple[int, int], Sel] = {}
        graded: dict[tuple[int, int], LevelSel] = {}
        for (kind, cls), locs in self.masks:
            for loc in locs:
                if kind == FAN:
                    fan[(cls, loc)] = Sel.all()
                else:
                    graded[(cls, loc)] = LevelSel.all()
        sp = Sel.from_(self.spine_from) if self.spine_from is not None else Sel.none()
        return VSet.of(self.explicit) | VSet.make((), sp, fan, graded)

    def levels(self) -> list[int]:
        out = [v.level for v in self.explicit if v.kind in (SPINE, GRADED)]
        if self.spine_from is not None:
            out.append(self.spine_from)
        return out

    def to_json(self) -> dict:
        return {
            "explicit": [name_of(v) for v in sorted(self.explicit)],
            "classMasks": {class_name(k, c): sorted(locs) for (k, c), locs in self.masks if locs},
            "spineCofinalFrom": self.spine_from,
        }


# -- parsing -----------------------------------------------------------------


def _graph(d: Any, where: str) -> FiniteGraph:
    if not isinstance(d, dict) or "n" not in d:
        raise ParseError(f"{where}: expected object with 'n' and 'edges'")
    try:
        n = int(d["n"])
        edges = d.get("edges", [])
        if n < 0 or not isinstance(edges, list):
            raise ValueError
        for e in edges:
            if not isinstance(e, (list, tuple)) or len(e) != 2:
                raise ValueError
    except (TypeError, ValueError):
        raise ParseError(f"{where}: malformed graph") from None
    try:
        return FiniteGraph.build(n, edges)
    except InvalidInstance as e:
        raise InvalidInstance(f"{where}: {e}") from None


def _vertex(text: Any, where: str) -> VertexRef:
    if not isinstance(text, str):
        raise ParseError(f"{where}: vertex names are strings")
    try:
        return parse_vertex(text)
    except ValueError as e:
        raise ParseError(f"{where}: {e}") from None


def _window(d: Any, where: str) -> Window:
    if d == "prefix":
        return Window("prefix")
    if isinstance(d, dict) and set(d) == {"band"}:
        try:
            return Window("band", int(d["band"]))
        except (TypeError, ValueError):
            pass
    raise ParseError(f"{where}: window must be 'prefix' or {{'band': width}}")


def instance_from_dict(doc: Any, name: str = "") -> tuple[Presentation, TargetSet]:
    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    if doc.get("format") != FORMAT:
        raise ParseError(f"missing or unsupported format header (want {FORMAT!r})")
    known = {"format", "name", "kernel", "spine", "fanClasses", "gradedClasses", "target"}
    extra = set(doc) - known
    if extra:
        raise ParseError(f"unknown keys: {sorted(extra)}")
    kernel = _graph(doc.get("kernel", {"n": 0, "edges": []}), "kernel")
    sp = doc.get("spine", {"present": False})
    if not isinstance(sp, dict):
        raise ParseError("spine: expected object")
    has_spine = bool(sp.get("present", False))
    spine_edges = sp.get("edges", True)
    if not isinstance(spine_edges, bool):
        raise ParseError("spine.edges: expected boolean")
    anchor = sp.get("anchor")
    if anchor is not None:
        if isinstance(anchor, str):
            v = _vertex(anchor, "spine.anchor")
            if v.kind != KERNEL:
                raise InvalidInstance("spine.anchor must be a kernel vertex")
            anchor = v.local
        elif not isinstance(anchor, int):
            raise ParseError("spine.anchor: expected kernel index")
    fans = []
    for i, fc in enumerate(doc.get("fanClasses", [])):
        where = f"fanClasses[{i}]"
        if not isinstance(fc, dict):
            raise ParseError(f"{where}: expected object")
        t = _graph(fc.get("template"), f"{where}.template")
        atts = []
        for j, pair in enumerate(fc.get("attachments", [])):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise ParseError(f"{where}.attachments[{j}]: expected [local, anchor]")
            try:
                loc = int(pair[0])
            except (TypeError, ValueError):
                raise ParseError(f"{where}.attachments[{j}]: bad local") from None
            atts.append((loc, _vertex(pair[1], f"{where}.attachments[{j}]")))
        fans.append(FanClass(t, tuple(sorted(set(atts)))))
    grads = []
    for i, gc in enumerate(doc.get("gradedClasses", [])):
        where = f"gradedClasses[{i}]"
        if not isinstance(gc, dict):
            raise ParseError(f"{where}: expected object")
        t = _graph(gc.get("template"), f"{where}.template")
        w = _window(gc.get("window"), f"{where}.window")
        try:
            locs = frozenset(int(x) for x in gc.get("attachmentLocals", []))
        except (TypeError, ValueError):
            raise ParseError(f"{where}.attachmentLocals: expected integers") from None
        grads.append(GradedClass(t, w, locs))
    P = Presentation(
        kernel, has_spine, anchor, tuple(fans), tuple(grads), doc.get("name", name), spine_edges
    )
    P.validate()

    tg = doc.get("target", {})
    if not isinstance(tg, dict):
        raise ParseError("target: expected object")
    explicit = frozenset(_vertex(x, "target.explicit") for x in tg.get("explicit", []))
    masks = []
    cm = tg.get("classMasks", {}) or {}
    if not isinstance(cm, dict):
        raise ParseError("target.classMasks: expected object")
    for cid, locs in sorted(cm.items()):
        try:
            key = parse_class_name(cid)
            masks.append((key, frozenset(int(x) for x in locs)))
        except (TypeError, ValueError):
            raise ParseError(f"target.classMasks[{cid!r}] malformed") from None
    sf = tg.get("spineCofinalFrom")
    if sf is not None and (not isinstance(sf, int) or sf < 0):
        raise ParseError("target.spineCofinalFrom: expected nonnegative integer")
    U = TargetSet(explicit, tuple(sorted(masks)), sf)
    U.validate(P)
    return P, U


def parse_presentation(text: str, name: str = "") -> tuple[Presentation, TargetSet]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} col {e.colno}: {e.msg}") from None
    return instance_from_dict(doc, name)


def instance_to_dict(P: Presentation, U: TargetSet) -> dict:
    d = {"format": FORMAT}
    if P.name:
        d["name"] = P.name
    d.update(P.to_json())
    d["target"] = U.to_json()
    return d


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(P: Presentation, U: TargetSet | None = None) -> str:
    body = P.to_json()
    if U is not None:
        body = {"presentation": body, "target": U.to_json()}
    return hashlib.sha256(canonical_json(body).encode()).hexdigest()[:16]


BUNDLED = {
    "INST-PAPER": "prefix.json",
    "INST-RAY": "ray.json",
    "INST-FIN": "fin.json",
    "INST-FAN1": "fan1.json",
    "INST-FAN2": "fan2.json",
    "INST-INC3": "incomparable3.json",
    "INST-MIXED": "mixed.json",
}


def load_bundled(key: str) -> tuple[Presentation, TargetSet]:
    fname = BUNDLED[key]
    text = resources.files("combdual.data").joinpath(fname).read_text()
    return parse_presentation(text, name=key)


def with_target(U: TargetSet, **changes: Any) -> TargetSet:
    from dataclasses import replace

    return replace(U, **changes)
