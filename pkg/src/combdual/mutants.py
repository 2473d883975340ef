"""Single-field certificate tampers.  Each must flip a verifier from accept to reject."""
from __future__ import annotations

import copy
from typing import Callable

from .components import neighbors
from .presentation import Presentation, TargetSet
from .selectors import Sel
from .vertices import kernel, name_of, parse_vertex, spine
from .vset import VSet

Mutant = Callable[[Presentation, TargetSet, dict], "dict | None"]


def shrink_witness(P: Presentation, U: TargetSet, c: dict) -> dict | None:
    """Keep only the centre of the witness set."""
    if len(c["witnessX"]) < 2:
        return None
    c = copy.deepcopy(c)
    c["witnessX"] = [c["center"]]
    return c


def finite_copies(P: Presentation, U: TargetSet, c: dict) -> dict | None:
    c = copy.deepcopy(c)
    c["copies"] = Sel.only(range(3)).to_json()
    return c


def drop_path(P: Presentation, U: TargetSet, c: dict) -> dict | None:
    """Delete one scheduled pair's path; failing that, the graded path rules.

    Graded windows can overlap, so dropping a single family may leave every
    pair linked through another; all rules go at once.
    """
    c = copy.deepcopy(c)
    if c["paths"]:
        c["paths"].pop(0)
    elif c["gradedLinkage"]:
        c["gradedLinkage"] = []
    else:
        return None
    return c


def drop_target_vertex(P: Presentation, U: TargetSet, c: dict) -> dict | None:
    if U.explicit:
        v = min(U.explicit)
    elif U.spine_from is not None:
        v = spine(U.spine_from)
    else:
        return None
    c = copy.deepcopy(c)
    B = VSet.from_json(c["partB"]) - VSet.of([v])
    c["partB"] = B.to_json()
    return c


def enlarge_separator(P: Presentation, U: TargetSet, c: dict) -> dict | None:
    """Add a vertex with no neighbour on the small side to some element's separator."""
    c = copy.deepcopy(c)
    pool = [kernel(i) for i in range(P.kernel.n)] + ([spine(l) for l in range(12)] if P.has_spine else [])
    for el in c["elements"]:
        small = VSet.from_json(el["small"])
        sep = {parse_vertex(x) for x in el["separator"]}
        for v in pool:
            if v not in sep and v not in small and neighbors(P, v).isdisjoint(small):
                el["separator"] = sorted(el["separator"] + [name_of(v)], key=parse_vertex)
                return c
    return None


def exclude_nothing(P: Presentation, U: TargetSet, c: dict) -> dict | None:
    if not any(row["exclude"] is not None for row in c["explicit"]):
        return None
    c = copy.deepcopy(c)
    for row in c["explicit"]:
        row["exclude"] = None
    return c


MUTANTS: dict[str, list[tuple[str, Mutant]]] = {
    "undominating-star": [("shrink-witness", shrink_witness), ("finite-copies", finite_copies)],
    "tough-subgraph": [("drop-path", drop_path), ("drop-target-vertex", drop_target_vertex)],
    "star-decomposition": [("enlarge-separator", enlarge_separator)],
    "admissible": [("exclude-nothing", exclude_nothing)],
}
