"""Separation families with finitely many explicit members and parametric tails.

Every infinite behaviour comes from rules (see :mod:`rules`).  Anything that
has to look at all instances of a rule is computed on the window
``[start, horizon]`` and then checked for stability on a larger window; a
mismatch raises :class:`SaturationError` instead of guessing.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InconsistentOrientation, InternalError, SaturationError
from .presentation import Presentation, TargetSet
from .rules import rule_instance, rule_order
from .separations import (
    EQ,
    Sep,
    _UF,
    compare,
    inconsistent_pair,
    invert,
    le,
    maximum,
    supremum,
)
from .vset import VSet


@dataclass(frozen=True)
class Member:
    label: str
    sep: Sep
    rule: int | None = None
    n: int | None = None


@dataclass
class Family:
    """Explicit members plus rule tails ``rule(n), n >= rule["from"]``."""

    P: Presentation
    U: TargetSet
    explicit: list[tuple[str, Sep]]
    rules: list[dict] = field(default_factory=list)
    start: int = 0
    grades: dict[str, int] = field(default_factory=dict)
    kinds: list[str] = field(default_factory=list)

    @property
    def horizon(self) -> int:
        return 2 * self.start + 2

    def instance(self, i: int, n: int) -> Member:
        return Member(f"R{i}@{n}", rule_instance(self.P, self.U, self.rules[i], n), i, n)

    def instances(self, upto: int | None = None) -> list[Member]:
        upto = self.horizon if upto is None else upto
        out = [Member(name, s) for name, s in self.explicit]
        for i, r in enumerate(self.rules):
            out.extend(self.instance(i, n) for n in range(r.get("from", 0), upto + 1))
        return out

    def is_finite(self) -> bool:
        return not self.rules

    # -- unions and parts ------------------------------------------------------
    def _union_upto(self, upto: int) -> VSet:
        out = VSet.empty()
        for m in self.instances(upto):
            out = out | m.sep.small
        return out

    @cached_property
    def union_small(self) -> VSet:
        if not self.rules:
            return self._union_upto(0)
        h = self.horizon
        h2 = h + self.start + 2
        cut = (self.start + h) // 2 + 1
        a = self._union_upto(h).extrapolate(cut)
        big = self._union_upto(h2)
        if a != big.extrapolate(cut) or a != big.extrapolate(h):
            raise SaturationError("union of small sides does not stabilise on the window")
        return a

    @cached_property
    def part(self) -> VSet:
        return self.P.universe - self.union_small

    # -- saturation of pairwise relations ------------------------------------------
    def check_saturation(self) -> None:
        """Relations between rule instances depend only on the rule pair and sign(n - m)."""
        lo = max([self.start] + [r.get("from", 0) for r in self.rules])
        win = range(lo, max(self.horizon, lo + self.start + 2) + 1)
        for name, s in self.explicit:
            for i in range(len(self.rules)):
                rel = {compare(s, self.instance(i, n).sep) for n in win}
                if len(rel) > 1:
                    raise SaturationError(f"{name} against rule {i}: relation varies {sorted(rel)}")
        for i, j in itertools.combinations_with_replacement(range(len(self.rules)), 2):
            seen: dict[int, set[str]] = {}
            for n, m in itertools.product(win, win):
                if i == j and n == m:
                    continue
                sgn = (n > m) - (n < m)
                seen.setdefault(sgn, set()).add(
                    compare(self.instance(i, n).sep, self.instance(j, m).sep)
                )
            for sgn, rel in seen.items():
                if len(rel) > 1:
                    raise SaturationError(f"rules {i}/{j} at sign {sgn}: relation varies {sorted(rel)}")

    def rule_kind(self, i: int) -> str:
        """'chain' if instances strictly increase, 'antichain' if they form a star."""
        win = range(max(self.start, self.rules[i].get("from", 0)), self.horizon + 1)
        inst = [self.instance(i, n).sep for n in win]
        if all(compare(a, b) == "le" for a, b in zip(inst, inst[1:])):
            orders = [rule_order(self.P, self.rules[i], n) for n in win]
            if orders[-1] <= orders[0]:
                raise SaturationError(f"rule {i}: chain of bounded order")
            return "chain"
        if all(le(a, invert(b)) for a, b in itertools.combinations(inst, 2)):
            return "antichain"
        raise SaturationError(f"rule {i} is neither a chain nor a star on the window")

    def check_consistent(self) -> None:
        mem = self.instances()
        bad = inconsistent_pair([m.sep for m in mem])
        if bad is not None:
            a, b = mem[bad[0]].label, mem[bad[1]].label
            raise InconsistentOrientation(f"{a} and {b} point away from each other")


# -- parliament ------------------------------------------------------------------


class _Order:
    """Memoised <= on a fixed member list."""

    def __init__(self, members: list[Member]) -> None:
        self.m = members
        self._le: dict[tuple[int, int], bool] = {}

    def le(self, i: int, j: int) -> bool:
        key = (i, j)
        if key not in self._le:
            self._le[key] = i == j or le(self.m[i].sep, self.m[j].sep)
        return self._le[key]


def corridor_classes(members: list[Member], idx: list[int], order: _Order) -> list[list[int]]:
    uf = _UF(len(members))
    for r in idx:
        below = [i for i in idx if order.le(i, r)]
        for i in below[1:]:
            uf.union(below[0], i)
    groups: dict[int, list[int]] = {}
    for i in idx:
        groups.setdefault(uf.find(i), []).append(i)
    return sorted(groups.values())


def parliament(F: Family) -> Family:
    """The parliament of ``F`` (a consistent orientation) with grades of first appearance.

    Computed on the window; rule instances beyond the start that reappear as
    their own corridor suprema are folded back into rule tails.
    """
    F.check_consistent()
    members = F.instances()
    order = _Order(members)
    kinds = [F.rule_kind(i) for i in range(len(F.rules))]
    sups: list[tuple[Sep, int, list[str]]] = []
    seen: dict[Sep, int] = {}
    for k in sorted({m.sep.order for m in members}):
        idx = [i for i, m in enumerate(members) if m.sep.order <= k]
        for cls in corridor_classes(members, idx, order):
            s = supremum([members[i].sep for i in cls])
            if s in seen:
                continue
            seen[s] = len(sups)
            sups.append((s, k, [members[i].label for i in cls]))

    inst = {(m.rule, m.n): m.sep for m in members if m.rule is not None}
    tails: list[dict] = []
    tail_from: dict[int, int] = {}
    for i, kind in enumerate(kinds):
        lo = max(F.start, F.rules[i].get("from", 0))
        for n in range(lo, F.horizon + 1):
            if inst[(i, n)] not in seen:
                raise SaturationError(f"rule {i} instance {n} is not a corridor supremum")
        tail_from[i] = lo
        tails.append(dict(F.rules[i], **{"from": lo}))
    explicit: list[tuple[str, Sep]] = []
    out_grades: dict[str, int] = {}
    for s, k, labels in sups:
        owner = next(
            ((i, n) for (i, n), t in inst.items() if t == s and n >= tail_from[i]), None
        )
        if owner is not None:
            out_grades[f"R{owner[0]}@{owner[1]}"] = k
            continue
        name = next((m.label for m in members if m.sep == s), "sup(" + ",".join(labels) + ")")
        explicit.append((name, s))
        out_grades[name] = k
    return Family(F.P, F.U, explicit, tails, F.start, out_grades, kinds)


def grade_monotone(pi: Family) -> tuple[str, str] | None:
    """A pair ``s < r`` in the parliament whose grades do not increase, if any."""
    mem = pi.instances()
    for a, b in itertools.permutations(mem, 2):
        ga, gb = pi.grades.get(a.label), pi.grades.get(b.label)
        if ga is None or gb is None:
            continue
        if le(a.sep, b.sep) and compare(a.sep, b.sep) != EQ and not ga < gb:
            return a.label, b.label
    return None


# -- corridor targets ------------------------------------------------------------------


@dataclass(frozen=True)
class Target:
    """Leaf: ``top`` is the corridor maximum.  End: chain ``rule(n), n >= n0``."""

    kind: str
    members: tuple[str, ...]
    top: Sep | None = None
    label: str = ""
    rule: int | None = None
    n0: int | None = None


def corridor_targets(pi: Family) -> list[Target]:
    members = pi.instances()
    order = _Order(members)
    kinds = pi.kinds or [pi.rule_kind(i) for i in range(len(pi.rules))]
    classes = corridor_classes(members, list(range(len(members))), order)
    out: list[Target] = []
    tail_rules: set[int] = set()
    for cls in classes:
        ms = [members[i] for i in cls]
        chain_rules = sorted({m.rule for m in ms if m.rule is not None and kinds[m.rule] == "chain"})
        anti = [m for m in ms if m.rule is not None and kinds[m.rule] == "antichain"]
        if chain_rules:
            if len(chain_rules) > 1 or anti:
                raise SaturationError("corridor mixes several parametric chains")
            r = chain_rules[0]
            seps = {m.sep for m in ms}
            n0 = next((n for n in range(pi.horizon + 1) if pi.instance(r, n).sep in seps), None)
            top = pi.instance(r, pi.horizon).sep
            if n0 is None or not all(le(m.sep, top) for m in ms):
                raise InternalError("chain corridor: the chain is not cofinal")
            out.append(Target("end", tuple(m.label for m in ms), rule=r, n0=n0))
            continue
        if anti:
            if len(ms) > 1:
                raise SaturationError(f"parametric corridor {ms[0].label} is not a singleton")
            tail_rules.add(anti[0].rule)  # type: ignore[arg-type]
            continue
        top = maximum([m.sep for m in ms])
        if top is None:
            raise InternalError("corridor without maximum and without a chain")
        out.append(Target("leaf", tuple(m.label for m in ms), ms[top].sep, ms[top].label))
    for r in sorted(tail_rules):
        out.append(Target("leaf", (f"R{r}@*",), label=f"R{r}", rule=r, n0=pi.rules[r].get("from", 0)))
    return out


def star_from_targets(pi: Family, targets: list[Target]) -> tuple[Family, list[dict]]:
    """Assemble the star: leaf maxima, leaf rule tails, and for ends the first chain
    member plus the meets of consecutive chain members."""
    explicit: list[tuple[str, Sep]] = []
    rules: list[dict] = []
    prov: list[dict] = []
    for t in targets:
        if t.kind == "leaf" and t.rule is None:
            explicit.append((t.label, t.top))  # type: ignore[arg-type]
            prov.append({"element": t.label, "mode": "corridor-leaf", "corridor": list(t.members)})
        elif t.kind == "leaf":
            rules.append(dict(pi.rules[t.rule], **{"from": t.n0}))
            prov.append({"element": f"rule{len(rules) - 1}", "mode": "corridor-leaf", "corridor": list(t.members)})
        else:
            base = dict(pi.rules[t.rule])
            first = pi.instance(t.rule, t.n0)  # type: ignore[arg-type]
            explicit.append((first.label, first.sep))
            base.pop("from", None)
            rules.append({"rule": "meet", "base": base, "from": t.n0 + 1})  # type: ignore[operator]
            prov.append({"element": first.label, "mode": "corridor-end", "corridor": list(t.members)})
            prov.append({"element": f"rule{len(rules) - 1}", "mode": "corridor-end", "corridor": list(t.members)})
    return Family(pi.P, pi.U, explicit, rules, pi.start), prov
