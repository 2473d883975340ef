"""Tame star-decompositions whose central part contains U."""
from __future__ import annotations

from .admissible import build_principal_tree_set
from .components import critical_sets, delete_and_decompose
from .family import Family, corridor_targets, parliament, star_from_targets
from .presentation import Presentation, TargetSet
from .separations import Sep
from .vertices import name_of
from .vset import VSet


def finite_target_star(P: Presentation, U: TargetSet) -> Family:
    """One element per neighbourhood class of the components of G - U.

    With U empty the star is empty and the central part is the whole graph;
    callers use this only when there are no critical sets to place in leaves.
    """
    X = frozenset(U.explicit)
    if not X:
        return Family(P, U, [])
    D = delete_and_decompose(P, X)
    groups: dict[frozenset, VSet] = {}
    for comp in D.explicit:
        groups[comp.neighbourhood] = groups.get(comp.neighbourhood, VSet.empty()) | comp.vertices
    for b in D.bundles:
        groups[b.neighbourhood] = groups.get(b.neighbourhood, VSet.empty()) | b.vset(P)
    members = []
    for Y in sorted(groups, key=lambda y: (len(y), sorted(y))):
        label = "{" + ",".join(name_of(v) for v in sorted(Y)) + "}"
        members.append((label, Sep(P, Y, groups[Y])))
    return Family(P, U, members)


def _sep_json(label: str, s: Sep) -> dict:
    return {"label": label, **s.to_json()}


def build_star_decomposition(P: Presentation, U: TargetSet, chain_offset: int = 0) -> dict:
    if U.is_finite and (U.explicit or not critical_sets(P)):
        sigma = finite_target_star(P, U)
        prov = [{"element": lab, "mode": "finite-target"} for lab, _ in sigma.explicit]
        return {
            "mode": "finite",
            "elements": [_sep_json(lab, s) for lab, s in sigma.explicit],
            "rules": [],
            "start": 0,
            "centralPart": sigma.part.to_json(),
            "provenance": prov,
        }
    A, F = build_principal_tree_set(P, U)
    pi = parliament(F)
    targets = corridor_targets(pi)
    if chain_offset:
        targets = [
            t if t.kind != "end" else type(t)(t.kind, t.members, t.top, t.label, t.rule, t.n0 + chain_offset)
            for t in targets
        ]
    sigma, prov = star_from_targets(pi, targets)
    return {
        "mode": "parliament",
        "elements": [_sep_json(lab, s) for lab, s in sigma.explicit],
        "rules": sigma.rules,
        "start": sigma.start,
        "centralPart": sigma.part.to_json(),
        "provenance": prov,
        "assignment": A.to_json(P),
    }
