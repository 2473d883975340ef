"""Component assignments on critical sets and the parametric separation rules.

A rule descriptor is a small JSON object naming a graded critical family and a
start level.  Instantiating it at level ``n`` uses nothing but component
decompositions, which is what lets a verifier re-evaluate a certificate
without trusting whoever wrote it.

Rule kinds::

    {"rule": "K", "family": f, "from": n0}      full-neighbourhood components kept by the
                                                default assignment at X_f(n)
    {"rule": "Kall", "family": f, "from": n0}   every component except the excluded one
    {"rule": "meet", "base": R, "from": n0}     R(n) ∧ R(n-1)*
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .components import ComponentDecomposition, GradedPattern, critical_sets, delete_and_decompose
from .errors import ParseError
from .presentation import Presentation, TargetSet
from .selectors import Sel
from .separations import Sep, invert, meet
from .vertices import VertexRef, kernel
from .vset import VSet

CompId = tuple  # ("E", i) | ("B", i) whole bundle | ("B", i, copy)


def full_components(D: ComponentDecomposition) -> list[CompId]:
    """Components of G - X whose neighbourhood is all of X (bundles as one id)."""
    out: list[CompId] = [("E", i) for i, c in enumerate(D.explicit) if c.neighbourhood == D.deleted]
    out += [("B", i) for i, b in enumerate(D.bundles) if b.neighbourhood == D.deleted]
    return out


def root_component(P: Presentation, D: ComponentDecomposition) -> CompId | None:
    """The tail component if there is a spine, else the one holding the least live kernel vertex."""
    if D.tail_index is not None:
        return ("E", D.tail_index)
    for i in range(P.kernel.n):
        if kernel(i) not in D.deleted:
            return D.locate(kernel(i))
    return None


def default_exclusion(P: Presentation, D: ComponentDecomposition, kind: str = "full") -> CompId | None:
    """The component left out before U-removal.

    The root component when it would otherwise be kept; failing that, copy 0
    of the first kept bundle when every component would be kept.
    """
    root = root_component(P, D)
    kept = full_components(D) if kind == "full" else _all_ids(D)
    if root is not None and root in kept:
        return root
    if root is None and kept and _covers_everything(D, kept):
        for cid in kept:
            if cid[0] == "B":
                return ("B", cid[1], 0)
        return kept[0]
    return None


def _all_ids(D: ComponentDecomposition) -> list[CompId]:
    return [("E", i) for i in range(len(D.explicit))] + [("B", i) for i in range(len(D.bundles))]


def _covers_everything(D: ComponentDecomposition, kept: list[CompId]) -> bool:
    return len(kept) == len(D.explicit) + len(D.bundles)


def u_meeting(P: Presentation, D: ComponentDecomposition, Uv: VSet) -> list[CompId]:
    """Components meeting U; bundle copies are listed one by one (finitely many when U is tough)."""
    out: list[CompId] = [("E", i) for i, c in enumerate(D.explicit) if not c.vertices.isdisjoint(Uv)]
    for i, b in enumerate(D.bundles):
        hit = b.vset(P) & Uv
        if hit.is_empty():
            continue
        copies = Sel.none()
        for _, s in hit.fan:
            copies = copies | s
        for _, s in hit.graded:
            copies = copies | s.at(b.level)
        if not copies.is_finite():
            out.append(("B", i))
        else:
            out.extend(("B", i, c) for c in copies.members())
    return out


@dataclass(frozen=True)
class Choice:
    """The kept components at one critical set."""

    X: frozenset[VertexRef]
    kept: tuple[CompId, ...]  # explicit ids and whole bundles
    dropped_copies: tuple[tuple[int, frozenset[int]], ...]  # bundle index -> removed copies

    def small(self, P: Presentation, D: ComponentDecomposition) -> VSet:
        drop = dict(self.dropped_copies)
        out = VSet.empty()
        for cid in self.kept:
            if cid[0] == "E":
                out = out | D.explicit[cid[1]].vertices
            else:
                b = D.bundles[cid[1]]
                out = out | b.vset(P, b.copies - Sel.only(drop.get(cid[1], ())))
        return out

    def contains(self, cid: CompId) -> bool:
        if cid[0] == "E":
            return cid in self.kept
        if ("B", cid[1]) not in self.kept:
            return False
        return len(cid) == 2 or cid[2] not in dict(self.dropped_copies).get(cid[1], frozenset())


def make_choice(
    P: Presentation,
    X: Iterable[VertexRef],
    excluded: CompId | None,
    Uv: VSet | None,
    kind: str = "full",
) -> Choice:
    X = frozenset(X)
    D = delete_and_decompose(P, X)
    base = full_components(D) if kind == "full" else _all_ids(D)
    removed = list(u_meeting(P, D, Uv)) if Uv is not None else []
    if excluded is not None:
        removed.append(excluded)
    kept = []
    drops: dict[int, set[int]] = {}
    for cid in base:
        if cid in removed:
            continue
        if cid[0] == "B":
            for r in removed:
                if r[0] == "B" and r[1] == cid[1] and len(r) == 3:
                    drops.setdefault(cid[1], set()).add(r[2])
        kept.append(cid)
    return Choice(X, tuple(kept), tuple((i, frozenset(c)) for i, c in sorted(drops.items())))


def choice_sep(P: Presentation, ch: Choice) -> Sep:
    D = delete_and_decompose(P, ch.X)
    return Sep(P, ch.X, ch.small(P, D))


# -- graded families --------------------------------------------------------------


def family_instance(P: Presentation, family: int, n: int) -> frozenset[VertexRef]:
    pat = critical_sets(P)[family]
    if not isinstance(pat, GradedPattern):
        raise ParseError(f"critical pattern {family} is not a graded family")
    return pat.at(n)


def rule_start(P: Presentation, U: TargetSet) -> int:
    return P.saturation(U.levels())


@lru_cache(maxsize=4096)
def _rule_sep(P: Presentation, U: TargetSet, key: str, family: int, n: int) -> Sep:
    X = family_instance(P, family, n)
    D = delete_and_decompose(P, X)
    kind = "full" if key == "K" else "all"
    ch = make_choice(P, X, default_exclusion(P, D, kind), U.as_vset(P), kind)
    return choice_sep(P, ch)


def rule_instance(P: Presentation, U: TargetSet, desc: dict, n: int) -> Sep:
    r = desc.get("rule")
    if r in ("K", "Kall"):
        return _rule_sep(P, U, r, int(desc["family"]), n)
    if r == "meet":
        base = desc["base"]
        return meet(rule_instance(P, U, base, n), invert(rule_instance(P, U, base, n - 1)))
    raise ParseError(f"unknown rule {r!r}")


def rule_order(P: Presentation, desc: dict, n: int) -> int:
    if desc.get("rule") == "meet":
        return rule_order(P, desc["base"], n)
    return len(family_instance(P, int(desc["family"]), n))


def rule_levels(desc: dict) -> int:
    """How far below ``n`` an instance reaches back (meet rules look at n-1)."""
    return 1 + rule_levels(desc["base"]) if desc.get("rule") == "meet" else 0


def validate_rule(P: Presentation, desc: dict) -> None:
    r = desc.get("rule")
    if r == "meet":
        if not isinstance(desc.get("base"), dict):
            raise ParseError("meet rule needs a base rule")
        validate_rule(P, desc["base"])
    elif r in ("K", "Kall"):
        f = desc.get("family")
        pats = critical_sets(P)
        if not isinstance(f, int) or not 0 <= f < len(pats) or not isinstance(pats[f], GradedPattern):
            raise ParseError(f"rule names no graded family: {desc!r}")
    else:
        raise ParseError(f"unknown rule {r!r}")
    if not isinstance(desc.get("from", 0), int) or desc.get("from", 0) < 0:
        raise ParseError(f"bad start level in {desc!r}")
