"""Finite/cofinite subsets of the naturals and level-indexed families of them."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Callable, Iterable, Iterator


@dataclass(frozen=True, slots=True)
class Sel:
    """A subset of N that is either finite (``elems``) or cofinite (all but ``elems``)."""

    cofinite: bool
    elems: frozenset[int]

    @staticmethod
    def none() -> "Sel":
        return _NONE

    @staticmethod
    def all() -> "Sel":
        return _ALL

    @staticmethod
    def only(items: Iterable[int]) -> "Sel":
        return Sel(False, frozenset(items))

    @staticmethod
    def all_but(items: Iterable[int]) -> "Sel":
        return Sel(True, frozenset(items))

    @staticmethod
    def from_(start: int) -> "Sel":
        return Sel(True, frozenset(range(start)))

    def __contains__(self, i: int) -> bool:
        return (i in self.elems) != self.cofinite

    def is_empty(self) -> bool:
        return not self.cofinite and not self.elems

    def is_finite(self) -> bool:
        return not self.cofinite

    def complement(self) -> "Sel":
        return Sel(not self.cofinite, self.elems)

    def __or__(self, o: "Sel") -> "Sel":
        a, b = self.elems, o.elems
        if not self.cofinite and not o.cofinite:
            return Sel(False, a | b)
        if not self.cofinite:
            return Sel(True, b - a)
        if not o.cofinite:
            return Sel(True, a - b)
        return Sel(True, a & b)

    def __and__(self, o: "Sel") -> "Sel":
        a, b = self.elems, o.elems
        if not self.cofinite and not o.cofinite:
            return Sel(False, a & b)
        if not self.cofinite:
            return Sel(False, a - b)
        if not o.cofinite:
            return Sel(False, b - a)
        return Sel(True, a | b)

    def __sub__(self, o: "Sel") -> "Sel":
        return self & o.complement()

    def issubset(self, o: "Sel") -> bool:
        if self.cofinite:
            return o.cofinite and o.elems <= self.elems
        return self.elems.isdisjoint(o.elems) if o.cofinite else self.elems <= o.elems

    def members(self, bound: int | None = None) -> Iterator[int]:
        """Ascending members; cofinite sets need ``bound`` (exclusive) or iterate forever."""
        if not self.cofinite:
            yield from sorted(i for i in self.elems if bound is None or i < bound)
            return
        it = range(bound) if bound is not None else count()
        for i in it:
            if i not in self.elems:
                yield i

    def first(self) -> int | None:
        return next(self.members(), None)

    def horizon(self) -> int:
        """One past the largest listed exception/member."""
        return max(self.elems, default=-1) + 1

    def to_json(self) -> dict:
        return {"cofinite": self.cofinite, "elems": sorted(self.elems)}

    @staticmethod
    def from_json(d: dict) -> "Sel":
        return Sel(bool(d["cofinite"]), frozenset(int(x) for x in d["elems"]))

    def __repr__(self) -> str:
        body = ",".join(map(str, sorted(self.elems)))
        return f"All\\{{{body}}}" if self.cofinite else f"{{{body}}}"


_NONE = Sel(False, frozenset())
_ALL = Sel(True, frozenset())


@dataclass(frozen=True, slots=True)
class LevelSel:
    """Subset of N x N (level, copy): explicit selectors below ``len(levels)``, ``tail`` above.

    Normal form: the last explicit level never equals ``tail``.
    """

    levels: tuple[Sel, ...]
    tail: Sel

    @staticmethod
    def make(levels: Iterable[Sel], tail: Sel) -> "LevelSel":
        lv = list(levels)
        while lv and lv[-1] == tail:
            lv.pop()
        return LevelSel(tuple(lv), tail)

    @staticmethod
    def none() -> "LevelSel":
        return LevelSel((), _NONE)

    @staticmethod
    def all() -> "LevelSel":
        return LevelSel((), _ALL)

    @staticmethod
    def at_level(n: int, copies: Sel) -> "LevelSel":
        return LevelSel.make([_NONE] * n + [copies], _NONE)

    @staticmethod
    def from_level(n: int, copies: Sel = _ALL) -> "LevelSel":
        return LevelSel.make([_NONE] * n, copies)

    def at(self, n: int) -> Sel:
        return self.levels[n] if n < len(self.levels) else self.tail

    def __contains__(self, pair: tuple[int, int]) -> bool:
        n, i = pair
        return i in self.at(n)

    def _zip(self, o: "LevelSel", op: Callable[[Sel, Sel], Sel]) -> "LevelSel":
        k = max(len(self.levels), len(o.levels))
        return LevelSel.make(
            (op(self.at(n), o.at(n)) for n in range(k)), op(self.tail, o.tail)
        )

    def __or__(self, o: "LevelSel") -> "LevelSel":
        return self._zip(o, Sel.__or__)

    def __and__(self, o: "LevelSel") -> "LevelSel":
        return self._zip(o, Sel.__and__)

    def __sub__(self, o: "LevelSel") -> "LevelSel":
        return self._zip(o, Sel.__sub__)

    def complement(self) -> "LevelSel":
        return LevelSel.make((s.complement() for s in self.levels), self.tail.complement())

    def is_empty(self) -> bool:
        return self.tail.is_empty() and all(s.is_empty() for s in self.levels)

    def is_finite(self) -> bool:
        return self.tail.is_empty() and all(s.is_finite() for s in self.levels)

    def issubset(self, o: "LevelSel") -> bool:
        k = max(len(self.levels), len(o.levels))
        return self.tail.issubset(o.tail) and all(self.at(n).issubset(o.at(n)) for n in range(k))

    def horizon(self) -> int:
        return len(self.levels)

    def to_json(self) -> dict:
        return {"levels": [s.to_json() for s in self.levels], "tail": self.tail.to_json()}

    @staticmethod
    def from_json(d: dict) -> "LevelSel":
        return LevelSel.make((Sel.from_json(x) for x in d["levels"]), Sel.from_json(d["tail"]))
