"""Symbolic vertex sets over a presented graph.

A :class:`VSet` is a boolean combination normalised into four slots: a finite
set of kernel indices, a finite/cofinite set of spine levels, one copy
selector per ``(fan class, local)`` and one level-indexed selector per
``(graded class, local)``.  The representation is closed under union,
intersection and difference, and empty slots are dropped so equal sets compare
equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, TypeVar

from .selectors import LevelSel, Sel
from .vertices import FAN, KERNEL, SPINE, VertexRef, fan_copy, graded_copy, kernel, spine

S = TypeVar("S", Sel, LevelSel)


def _merge(
    a: tuple[tuple[tuple[int, int], S], ...],
    b: tuple[tuple[tuple[int, int], S], ...],
    op: Callable[[S, S], S],
    empty: S,
) -> tuple[tuple[tuple[int, int], S], ...]:
    da, db = dict(a), dict(b)
    out = []
    for key in sorted(da.keys() | db.keys()):
        r = op(da.get(key, empty), db.get(key, empty))
        if not r.is_empty():
            out.append((key, r))
    return tuple(out)


@dataclass(frozen=True, slots=True)
class VSet:
    kernel: frozenset[int] = frozenset()
    spine: Sel = Sel.none()
    fan: tuple[tuple[tuple[int, int], Sel], ...] = ()
    graded: tuple[tuple[tuple[int, int], LevelSel], ...] = ()

    # -- construction -----------------------------------------------------
    @staticmethod
    def empty() -> "VSet":
        return _EMPTY

    @staticmethod
    def of(vertices: Iterable[VertexRef]) -> "VSet":
        ker: set[int] = set()
        sp: set[int] = set()
        fan: dict[tuple[int, int], set[int]] = {}
        gr: dict[tuple[int, int], dict[int, set[int]]] = {}
        for v in vertices:
            if v.kind == KERNEL:
                ker.add(v.local)
            elif v.kind == SPINE:
                sp.add(v.level)
            elif v.kind == FAN:
                fan.setdefault((v.cls, v.local), set()).add(v.copy)
            else:
                gr.setdefault((v.cls, v.local), {}).setdefault(v.level, set()).add(v.copy)
        graded = []
        for key in sorted(gr):
            lv = gr[key]
            top = max(lv) + 1
            graded.append(
                (key, LevelSel.make((Sel.only(lv.get(n, ())) for n in range(top)), Sel.none()))
            )
        return VSet(
            frozenset(ker),
            Sel.only(sp),
            tuple((k, Sel.only(fan[k])) for k in sorted(fan)),
            tuple(graded),
        )

    @staticmethod
    def make(
        kernel: Iterable[int] = (),
        spine: Sel | None = None,
        fan: dict[tuple[int, int], Sel] | None = None,
        graded: dict[tuple[int, int], LevelSel] | None = None,
    ) -> "VSet":
        return VSet(
            frozenset(kernel),
            spine if spine is not None else Sel.none(),
            tuple((k, s) for k, s in sorted((fan or {}).items()) if not s.is_empty()),
            tuple((k, s) for k, s in sorted((graded or {}).items()) if not s.is_empty()),
        )

    # -- algebra ------------------------------------------------------------
    def __or__(self, o: "VSet") -> "VSet":
        return VSet(
            self.kernel | o.kernel,
            self.spine | o.spine,
            _merge(self.fan, o.fan, Sel.__or__, Sel.none()),
            _merge(self.graded, o.graded, LevelSel.__or__, LevelSel.none()),
        )

    def __and__(self, o: "VSet") -> "VSet":
        return VSet(
            self.kernel & o.kernel,
            self.spine & o.spine,
            _merge(self.fan, o.fan, Sel.__and__, Sel.none()),
            _merge(self.graded, o.graded, LevelSel.__and__, LevelSel.none()),
        )

    def __sub__(self, o: "VSet") -> "VSet":
        return VSet(
            self.kernel - o.kernel,
            self.spine - o.spine,
            _merge(self.fan, o.fan, Sel.__sub__, Sel.none()),
            _merge(self.graded, o.graded, LevelSel.__sub__, LevelSel.none()),
        )

    def is_empty(self) -> bool:
        return not self.kernel and self.spine.is_empty() and not self.fan and not self.graded

    def issubset(self, o: "VSet") -> bool:
        if not self.kernel <= o.kernel or not self.spine.issubset(o.spine):
            return False
        fo, go = dict(o.fan), dict(o.graded)
        return all(sel.issubset(fo.get(k, Sel.none())) for k, sel in self.fan) and all(
            sel.issubset(go.get(k, LevelSel.none())) for k, sel in self.graded
        )

    def isdisjoint(self, o: "VSet") -> bool:
        return (self & o).is_empty()

    def is_finite(self) -> bool:
        return (
            self.spine.is_finite()
            and all(s.is_finite() for _, s in self.fan)
            and all(s.is_finite() for _, s in self.graded)
        )

    def __contains__(self, v: VertexRef) -> bool:
        if v.kind == KERNEL:
            return v.local in self.kernel
        if v.kind == SPINE:
            return v.level in self.spine
        if v.kind == FAN:
            for key, s in self.fan:
                if key == (v.cls, v.local):
                    return v.copy in s
            return False
        for key, s in self.graded:
            if key == (v.cls, v.local):
                return (v.level, v.copy) in s
        return False

    def fan_sel(self, cls: int, local: int) -> Sel:
        for key, s in self.fan:
            if key == (cls, local):
                return s
        return Sel.none()

    def graded_sel(self, cls: int, local: int) -> LevelSel:
        for key, s in self.graded:
            if key == (cls, local):
                return s
        return LevelSel.none()

    def level_horizon(self) -> int:
        """One past the largest level at which this set's description changes."""
        h = self.spine.horizon()
        for _, s in self.graded:
            h = max(h, s.horizon())
        return h

    def copy_horizon(self) -> int:
        h = 0
        for _, s in self.fan:
            h = max(h, s.horizon())
        for _, s in self.graded:
            for lv in s.levels + (s.tail,):
                h = max(h, lv.horizon())
        return h

    def extrapolate(self, cut: int) -> "VSet":
        """Replace everything at levels >= ``cut`` by the pattern seen at level ``cut``."""
        sp = Sel.only(i for i in range(cut) if i in self.spine)
        if cut in self.spine:
            sp = sp | Sel.from_(cut)
        graded = {
            key: LevelSel.make((s.at(n) for n in range(cut)), s.at(cut)) for key, s in self.graded
        }
        return VSet.make(self.kernel, sp, dict(self.fan), graded)

    def restricted_levels(self, top: int) -> "VSet":
        """Drop spine and graded material at levels > ``top``."""
        graded = {
            k: LevelSel.make((s.at(n) for n in range(top + 1)), Sel.none()) for k, s in self.graded
        }
        return VSet.make(self.kernel, self.spine & Sel.only(range(top + 1)), dict(self.fan), graded)

    def vertices(self, depth: int, copies: int) -> Iterator[VertexRef]:
        """Members with level <= depth and copy index < copies, in canonical order."""
        for i in sorted(self.kernel):
            yield kernel(i)
        for lvl in self.spine.members(depth + 1):
            yield spine(lvl)
        by_copy: list[VertexRef] = []
        for (c, loc), s in self.fan:
            by_copy.extend(fan_copy(c, i, loc) for i in s.members(copies))
        for (g, loc), s in self.graded:
            for n in range(depth + 1):
                by_copy.extend(graded_copy(g, n, i, loc) for i in s.at(n).members(copies))
        yield from sorted(by_copy)

    def finite_members(self) -> list[VertexRef]:
        if not self.is_finite():
            raise ValueError("set is infinite")
        depth = self.level_horizon()
        return list(self.vertices(depth, self.copy_horizon() + 1))

    # -- serialisation ---------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "kernel": sorted(self.kernel),
            "spine": self.spine.to_json(),
            "fan": [[c, loc, s.to_json()] for (c, loc), s in self.fan],
            "graded": [[g, loc, s.to_json()] for (g, loc), s in self.graded],
        }

    @staticmethod
    def from_json(d: dict) -> "VSet":
        return VSet.make(
            (int(i) for i in d.get("kernel", [])),
            Sel.from_json(d["spine"]) if "spine" in d else None,
            {(int(c), int(loc)): Sel.from_json(s) for c, loc, s in d.get("fan", [])},
            {(int(g), int(loc)): LevelSel.from_json(s) for g, loc, s in d.get("graded", [])},
        )

    def __repr__(self) -> str:
        parts = []
        if self.kernel:
            parts.append("K" + repr(sorted(self.kernel)))
        if not self.spine.is_empty():
            parts.append(f"S{self.spine!r}")
        for (c, loc), s in self.fan:
            parts.append(f"c{c}.{loc}{s!r}")
        for (g, loc), s in self.graded:
            body = ",".join(f"{n}:{x!r}" for n, x in enumerate(s.levels) if not x.is_empty())
            parts.append(f"g{g}.{loc}<{body};tail={s.tail!r}>")
        return "VSet(" + " ".join(parts) + ")"


_EMPTY = VSet()
