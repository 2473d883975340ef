"""Strongly admissible component assignments and the principal tree set they induce."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .components import ExplicitPattern, GradedPattern, critical_sets, delete_and_decompose
from .errors import InternalError, ParseError, SearchExhausted
from .family import Family
from .presentation import Presentation, TargetSet
from .rules import CompId, choice_sep, default_exclusion, family_instance, full_components, make_choice, rule_start
from .separations import check_consistent, verify_tree_set
from .vertices import VertexRef, name_of, parse_vertex

BACKTRACK_LIMIT = 20000


@dataclass(frozen=True)
class Assignment:
    """Excluded component per explicit critical set; graded families use the root rule."""

    explicit: tuple[tuple[frozenset[VertexRef], CompId | None], ...]
    graded: tuple[int, ...]

    def excluded(self, X: frozenset[VertexRef]) -> CompId | None:
        for Y, e in self.explicit:
            if Y == X:
                return e
        raise KeyError(X)

    def to_json(self, P: Presentation) -> dict:
        rows = []
        for X, e in self.explicit:
            rows.append({"X": [name_of(v) for v in sorted(X)], "exclude": _rep(P, X, e)})
        return {"explicit": rows, "graded": [{"family": f, "rule": "K"} for f in self.graded]}


def _rep(P: Presentation, X: frozenset[VertexRef], cid: CompId | None) -> str | None:
    if cid is None:
        return None
    D = delete_and_decompose(P, X)
    if cid[0] == "E":
        return name_of(D.explicit[cid[1]].label)
    b = D.bundles[cid[1]]
    return name_of(P.copy_vertices(b.kind, b.cls, b.level or 0, cid[2])[0])


def assignment_from_json(P: Presentation, doc: dict) -> Assignment:
    try:
        rows = []
        for row in doc.get("explicit", []):
            X = frozenset(parse_vertex(x) for x in row["X"])
            for v in X:
                P.check_vertex(v)
            rep = row.get("exclude")
            cid = None
            if rep is not None:
                v = parse_vertex(rep)
                if v in X:
                    raise ParseError(f"excluded representative {rep} lies in X")
                cid = delete_and_decompose(P, X).locate(v)
            rows.append((X, cid))
        graded = tuple(int(g["family"]) for g in doc.get("graded", []))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed assignment: {e}") from None
    return Assignment(tuple(rows), graded)


# -- admissibility ------------------------------------------------------------------


def component_towards(P: Presentation, X: frozenset[VertexRef], Y: frozenset[VertexRef]) -> CompId | None:
    """C_X(Y): the component of G - X holding Y minus X (None if Y is inside X
    or Y minus X meets several components)."""
    rest = sorted(Y - X)
    if not rest:
        return None
    D = delete_and_decompose(P, X)
    ids = {D.locate(v) for v in rest}
    return ids.pop() if len(ids) == 1 else None


def kept(P: Presentation, X: frozenset[VertexRef], excluded: CompId | None, cid: CompId) -> bool:
    """Whether component ``cid`` of G - X lies in the (pre-target) choice."""
    ch = make_choice(P, X, excluded, None)
    return ch.contains(cid)


def conflict(
    P: Presentation, X: frozenset, ex: CompId | None, Y: frozenset, ey: CompId | None
) -> bool:
    if X <= Y or Y <= X:
        return False
    cx, cy = component_towards(P, X, Y), component_towards(P, Y, X)
    if cx is None or cy is None:
        return False
    return kept(P, X, ex, cx) and kept(P, Y, ey, cy)


def graded_window(P: Presentation, U: TargetSet) -> list[tuple[frozenset[VertexRef], CompId | None]]:
    """Graded instances up to the horizon with their default exclusions."""
    top = 2 * rule_start(P, U) + 2
    out = []
    for pat in critical_sets(P):
        if isinstance(pat, GradedPattern):
            for n in range(top + 1):
                if pat.owns(n):
                    X = pat.at(n)
                    out.append((X, default_exclusion(P, delete_and_decompose(P, X))))
    return out


def build_strongly_admissible(P: Presentation, U: TargetSet | None = None) -> Assignment:
    U = U if U is not None else TargetSet()
    pats = critical_sets(P)
    explicit = [p.vertices for p in pats if isinstance(p, ExplicitPattern)]
    graded = tuple(i for i, p in enumerate(pats) if isinstance(p, GradedPattern))
    fixed = graded_window(P, U)

    def options(X: frozenset) -> list[CompId | None]:
        D = delete_and_decompose(P, X)
        first = default_exclusion(P, D)
        opts = [first] + [c for c in full_components(D) if c[0] == "E" and c != first]
        return opts + ([None] if first is not None else [])

    choice: list[CompId | None] = []
    budget = [BACKTRACK_LIMIT]

    def ok(i: int, e: CompId | None) -> bool:
        X = explicit[i]
        for j in range(i):
            if conflict(P, X, e, explicit[j], choice[j]):
                return False
        return not any(conflict(P, X, e, Y, ey) for Y, ey in fixed)

    def search(i: int) -> bool:
        if i == len(explicit):
            return True
        for e in options(explicit[i]):
            budget[0] -= 1
            if budget[0] < 0:
                return False
            if ok(i, e) and _proper(P, explicit[i], e):
                choice.append(e)
                if search(i + 1):
                    return True
                choice.pop()
        return False

    if not search(0):
        raise SearchExhausted(f"no strongly admissible assignment for {P.name or 'instance'}")
    return Assignment(tuple(zip(explicit, choice)), graded)


def _proper(P: Presentation, X: frozenset, e: CompId | None) -> bool:
    """``0 < K(X) < all components``: nonempty small side and nonempty big side."""
    s = choice_sep(P, make_choice(P, X, e, None))
    return not s.small.is_empty() and not s.big.is_empty()


# -- principal tree set -------------------------------------------------------------------


def principal_family(P: Presentation, U: TargetSet, A: Assignment) -> Family:
    """O_K as a family: one separation per explicit critical set, one rule per graded family."""
    Uv = U.as_vset(P)
    members = []
    for X, e in A.explicit:
        s = choice_sep(P, make_choice(P, X, e, Uv))
        members.append(("{" + ",".join(name_of(v) for v in sorted(X)) + "}", s))
    rules = [{"rule": "K", "family": f, "from": _first_owned(P, f)} for f in A.graded]
    return Family(P, U, members, rules, rule_start(P, U))


def _first_owned(P: Presentation, f: int) -> int:
    pat = critical_sets(P)[f]
    return next(n for n in itertools.count() if pat.owns(n))


def build_principal_tree_set(P: Presentation, U: TargetSet) -> tuple[Assignment, Family]:
    A = build_strongly_admissible(P, U)
    F = principal_family(P, U, A)
    Uv = U.as_vset(P)
    mem = F.instances()
    for m in mem:
        if not m.sep.small.isdisjoint(Uv):
            raise InternalError(f"{m.label}: kept components meet the target")
        if m.sep.small.is_empty():
            raise InternalError(f"{m.label}: no component left after removing those meeting U")
    for X, _ in A.explicit:
        _cofinite(P, U, X)
    for f in A.graded:
        for n in range(F.horizon + 1):
            _cofinite(P, U, family_instance(P, f, n))
    rep = verify_tree_set([m.sep for m in mem], [m.label for m in mem])
    if not rep.ok:
        raise InternalError("principal family is not a regular tree set: " + "; ".join(rep.violations[:3]))
    check_consistent([m.sep for m in mem])
    if F.rules:
        F.check_saturation()
    return A, F


def _cofinite(P: Presentation, U: TargetSet, X: frozenset) -> None:
    """Every full bundle keeps all but finitely many copies after removing U-meeting ones."""
    D = delete_and_decompose(P, X)
    ch = make_choice(P, X, default_exclusion(P, D), U.as_vset(P))
    for cid in full_components(D):
        if cid[0] == "B" and cid not in ch.kept:
            raise InternalError(f"infinitely many full components of {sorted(map(name_of, X))} dropped")
