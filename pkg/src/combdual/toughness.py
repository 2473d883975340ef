"""Toughness of a target set and undominating stars witnessing its failure."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalError
from .presentation import Presentation, TargetSet
from .selectors import Sel
from .vertices import FAN, SPINE, VertexRef, class_name, name_of, spine


@dataclass(frozen=True)
class Toughness:
    tough: bool
    X: frozenset[VertexRef] | None = None
    kind: int | None = None
    cls: int | None = None
    level: int | None = None

    def describe(self) -> str:
        if self.tough:
            return "tough"
        xs = ",".join(name_of(v) for v in sorted(self.X or ()))
        return f"not tough: critical set {{{xs}}} via {class_name(self.kind, self.cls)}"


def toughness(P: Presentation, U: TargetSet) -> Toughness:
    """Not tough iff some class carries a nonempty mask.

    A mask puts every copy of its class into U, so the class's attachment set
    (level 0 for graded classes) has infinitely many full components meeting
    U.  Explicit vertices and the spine tail never do: the tail is a single
    component after any finite deletion.
    """
    for (kind, cls), locs in U.masks:
        if not locs:
            continue
        if kind == FAN:
            return Toughness(False, P.fan[cls].att, kind, cls, None)
        X = frozenset(spine(m) for m in P.graded[cls].window.levels(0))
        return Toughness(False, X, kind, cls, 0)
    return Toughness(True)


def _attached(P: Presentation, kind: int, cls: int, level: int, center: VertexRef) -> list[int]:
    if kind == FAN:
        return sorted({loc for loc, a in P.fan[cls].attachments if a == center})
    gc = P.graded[cls]
    if center.kind == SPINE and center.level in gc.window.levels(level):
        return sorted(gc.attach_locals)
    return []


def extract_undominating_star(P: Presentation, U: TargetSet, t: Toughness) -> dict:
    """Certificate payload for the star of centre ``min(X)`` through the masked copies."""
    if t.tough:
        raise InternalError("no witness: target is tough")
    center = min(t.X)  # type: ignore[type-var]
    level = t.level if t.level is not None else 0
    tmpl = P.fan[t.cls].template if t.kind == FAN else P.graded[t.cls].template
    mask = dict(U.masks)[(t.kind, t.cls)]
    path = tmpl.shortest_path(_attached(P, t.kind, t.cls, level, center), mask)
    if path is None:
        raise InternalError("template has no path from the centre's attachment to the mask")
    used = {v.copy for v in U.explicit if v.kind == t.kind and v.cls == t.cls and v.level == level}
    return {
        "center": name_of(center),
        "witnessX": [name_of(v) for v in sorted(t.X)],  # type: ignore[arg-type]
        "class": class_name(t.kind, t.cls),
        "level": t.level,
        "localPath": path,
        "copies": Sel.all_but(used).to_json(),
    }

