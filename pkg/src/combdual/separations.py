"""Oriented finite-order separations with symbolic sides.

A separation is stored as its separator and its small side ``A \\ B``; the
big side is everything else.  All comparisons reduce to subset tests on
:class:`VSet` values, so they are exact on the infinite graph.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .components import delete_and_decompose
from .errors import InconsistentOrientation, MixedPresentation
from .presentation import Presentation
from .selectors import Sel
from .vertices import FAN, VertexRef, name_of
from .vset import VSet

LE, GE, EQ, NESTED, CROSSING = "le", "ge", "eq", "nested-other", "crossing"


@dataclass(frozen=True)
class Sep:
    P: Presentation = field(compare=False, hash=False, repr=False)
    sep: frozenset[VertexRef]
    small: VSet

    @property
    def order(self) -> int:
        return len(self.sep)

    @property
    def sep_vset(self) -> VSet:
        return VSet.of(self.sep)

    @property
    def A(self) -> VSet:
        return self.small | self.sep_vset

    @property
    def B(self) -> VSet:
        return self.P.universe - self.small

    @property
    def big(self) -> VSet:
        """``B \\ A``."""
        return self.P.universe - self.small - self.sep_vset

    def describe(self) -> str:
        seps = ",".join(name_of(v) for v in sorted(self.sep))
        return f"({self.small!r} | {{{seps}}})"

    def to_json(self) -> dict:
        return {"separator": [name_of(v) for v in sorted(self.sep)], "small": self.small.to_json()}


def make_sep(P: Presentation, sep: Iterable[VertexRef], small: VSet) -> Sep:
    return Sep(P, frozenset(sep), small)


def _same(s: Sep, r: Sep) -> None:
    if s.P != r.P:
        raise MixedPresentation("separations over different presentations")


def le(s: Sep, r: Sep) -> bool:
    """``s <= r``: A_s within A_r and B_s containing B_r."""
    _same(s, r)
    return _le(s, r)


@lru_cache(maxsize=1 << 16)
def _le(s: Sep, r: Sep) -> bool:
    return s.small.issubset(r.small) and s.A.issubset(r.A)


def invert(s: Sep) -> Sep:
    return _invert(s.P, s)


@lru_cache(maxsize=1 << 14)
def _invert(P: Presentation, s: Sep) -> Sep:
    return Sep(P, s.sep, s.big)


def compare(s: Sep, r: Sep) -> str:
    _same(s, r)
    a, b = le(s, r), le(r, s)
    if a and b:
        return EQ
    if a:
        return LE
    if b:
        return GE
    if le(s, invert(r)) or le(invert(s), r):
        return NESTED
    return CROSSING


def nested(s: Sep, r: Sep) -> bool:
    return compare(s, r) != CROSSING


def meet(s: Sep, r: Sep) -> Sep:
    """Corner with A = A_s ∩ A_r and B = B_s ∪ B_r."""
    _same(s, r)
    small = s.small & r.small
    both = s.A & r.A
    sep = {v for v in s.sep | r.sep if v in both and v not in small}
    return Sep(s.P, frozenset(sep), small)


def join(s: Sep, r: Sep) -> Sep:
    return invert(meet(invert(s), invert(r)))


def is_small(s: Sep) -> bool:
    """``s <= s*``, i.e. the small side is empty."""
    return s.small.is_empty()


def is_degenerate(s: Sep) -> bool:
    return s == invert(s)


def is_trivial_in(s: Sep, family: Sequence[Sep]) -> bool:
    """``s`` is trivial if some ``r`` in the family has ``s < r`` and ``s < r*``."""
    for r in family:
        if r.sep == s.sep and (r.small == s.small or r.small == s.big):
            continue
        if le(s, r) and le(s, invert(r)) and s != r and s != invert(r):
            return True
    return False


# -- validity --------------------------------------------------------------


def union_of_components(P: Presentation, X: Iterable[VertexRef], S: VSet) -> str | None:
    """None if ``S`` is a union of components of G - X, else a diagnostic."""
    X = frozenset(X)
    D = delete_and_decompose(P, X)
    if not S.isdisjoint(VSet.of(X)):
        return "small side meets the separator"
    if not S.issubset(P.universe):
        return "small side leaves the vertex set"
    for comp in D.explicit:
        inter = comp.vertices & S
        if not inter.is_empty() and inter != comp.vertices:
            return f"small side splits the component at {name_of(comp.label)}"
    for b in D.bundles:
        t = P.fan[b.cls].template if b.kind == FAN else P.graded[b.cls].template
        sels = []
        for loc in range(t.n):
            if b.kind == FAN:
                sels.append(S.fan_sel(b.cls, loc) & b.copies)
            else:
                sels.append(S.graded_sel(b.cls, loc).at(b.level) & b.copies)
        if any(x != sels[0] for x in sels[1:]):
            return f"small side splits copies of {b.class_id}"
    return None


def validity_problem(s: Sep) -> str | None:
    return union_of_components(s.P, s.sep, s.small)


# -- tree sets and orientations ----------------------------------------------


@dataclass
class TreeSetReport:
    nested: bool = True
    regular: bool = True
    no_trivial: bool = True
    no_degenerate: bool = True
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.nested and self.regular and self.no_trivial and self.no_degenerate


def verify_tree_set(family: Sequence[Sep], names: Sequence[str] | None = None) -> TreeSetReport:
    names = list(names) if names is not None else [f"#{i}" for i in range(len(family))]
    rep = TreeSetReport()
    for i, s in enumerate(family):
        if is_small(s) or is_small(invert(s)):
            rep.regular = False
            rep.violations.append(f"small element {names[i]}")
        if is_degenerate(s):
            rep.no_degenerate = False
            rep.violations.append(f"degenerate element {names[i]}")
        if is_trivial_in(s, family):
            rep.no_trivial = False
            rep.violations.append(f"trivial element {names[i]}")
    for i, j in itertools.combinations(range(len(family)), 2):
        if compare(family[i], family[j]) == CROSSING:
            rep.nested = False
            rep.violations.append(f"crossing pair {names[i]} / {names[j]}")
    return rep


def inconsistent_pair(O: Sequence[Sep]) -> tuple[int, int] | None:
    """Indices of two members pointing away from each other, if any."""
    for i, j in itertools.permutations(range(len(O)), 2):
        if O[i] != O[j] and le(invert(O[i]), O[j]):
            return i, j
    return None


def check_consistent(O: Sequence[Sep]) -> None:
    bad = inconsistent_pair(O)
    if bad is not None:
        raise InconsistentOrientation(f"members {bad[0]} and {bad[1]} point away from each other")


def part_of(P: Presentation, O: Iterable[Sep]) -> VSet:
    out = P.universe
    for s in O:
        out = out - s.small
    return out


def is_star(sigma: Sequence[Sep]) -> tuple[int, int] | None:
    """None if every two distinct elements satisfy ``s <= r*``; else a violating pair."""
    for i, j in itertools.combinations(range(len(sigma)), 2):
        if not le(sigma[i], invert(sigma[j])):
            return i, j
    return None


# -- corridors --------------------------------------------------------------


class _UF:
    def __init__(self, n: int) -> None:
        self.p = list(range(n))

    def find(self, x: int) -> int:
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[max(ra, rb)] = min(ra, rb)


def corridors(O: Sequence[Sep], bound: int | None = None) -> list[list[int]]:
    """Corridors of the members of order <= ``bound``, as sorted index lists.

    Two members are related when some member of the same subfamily lies above
    both; corridors are the classes of the transitive closure.
    """
    idx = [i for i, s in enumerate(O) if bound is None or s.order <= bound]
    if not idx:
        return []
    check_consistent([O[i] for i in idx])
    uf = _UF(len(O))
    above = {i: [j for j in idx if le(O[i], O[j])] for i in idx}
    for r in idx:
        below = [i for i in idx if r in above[i]]
        for i in below[1:]:
            uf.union(below[0], i)
    groups: dict[int, list[int]] = {}
    for i in idx:
        groups.setdefault(uf.find(i), []).append(i)
    return sorted(groups.values())


def supremum(members: Sequence[Sep]) -> Sep:
    """A = union of the A-sides, B = intersection of the B-sides."""
    P = members[0].P
    small = VSet.empty()
    for s in members:
        small = small | s.small
    seps = set().union(*(s.sep for s in members))
    return Sep(P, frozenset(v for v in seps if v not in small), small)


def maximum(members: Sequence[Sep]) -> int | None:
    for i, s in enumerate(members):
        if all(le(r, s) for r in members):
            return i
    return None


# -- the lessish relation -------------------------------------------------------


def lessish(s: Sep, r: Sep) -> bool:
    """``s <= r``, or dropping one component of G - sep(s) from s's small side gives ``<= r``."""
    if le(s, r):
        return True
    if not s.sep_vset.issubset(r.A):
        return False
    rest = s.small - r.small
    if rest.is_empty():
        return True
    D = delete_and_decompose(s.P, s.sep)
    hits: list[tuple] = []
    for i, comp in enumerate(D.explicit):
        if not comp.vertices.isdisjoint(rest):
            hits.append(("E", i))
    for i, b in enumerate(D.bundles):
        copies = Sel.none()
        for key, sel in rest.fan if b.kind == FAN else rest.graded:
            if key[0] != b.cls:
                continue
            copies = copies | (sel if b.kind == FAN else sel.at(b.level))
        copies = copies & b.copies
        if not copies.is_finite():
            return False
        hits.extend(("B", i, c) for c in copies.members())
    if len(hits) != 1:
        return False
    C = D.component_vset(s.P, hits[0])
    if not C.issubset(s.small):
        return False
    return le(Sep(s.P, s.sep, s.small - C), r)


# -- tameness and where critical sets live ------------------------------------------


def tameness_problem(s: Sep) -> str | None:
    """Some Y within the separator with infinitely many exact-Y components on both sides."""
    D = delete_and_decompose(s.P, s.sep)
    inside: dict[frozenset, bool] = {}
    outside: dict[frozenset, bool] = {}
    for b in D.bundles:
        cin = _copies_in(s.P, b, s.small)
        cout = b.copies - cin
        if not cin.is_finite():
            inside[b.neighbourhood] = True
        if not cout.is_finite():
            outside[b.neighbourhood] = True
    for Y in sorted(inside, key=sorted):
        if outside.get(Y):
            return "infinitely many components with neighbourhood {" + ",".join(
                name_of(v) for v in sorted(Y)
            ) + "} on both sides"
    return None


def _copies_in(P: Presentation, b, S: VSet) -> Sel:
    if b.kind == FAN:
        sel = S.fan_sel(b.cls, 0)
    else:
        sel = S.graded_sel(b.cls, 0).at(b.level)
    return sel & b.copies


def orientation_by(s: Sep, X: frozenset[VertexRef]) -> str | None:
    """Side ("small" or "big") holding X and all but finitely many full-neighbourhood
    components of G - X; None if neither side does."""
    P = s.P
    D = delete_and_decompose(P, X)
    full = D.full_bundles()
    if not full:
        return None
    verdicts = set()
    for b in full:
        cin = _copies_in(P, b, s.small)
        cout = b.copies - cin
        if cout.is_finite():
            verdicts.add("small")
        elif cin.is_finite():
            verdicts.add("big")
        else:
            return None
    if len(verdicts) != 1:
        return None
    side = verdicts.pop()
    Xv = VSet.of(X)
    if side == "small" and Xv.issubset(s.A):
        return side
    if side == "big" and Xv.issubset(s.B):
        return side
    return None
