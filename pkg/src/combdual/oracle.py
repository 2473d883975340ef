"""Brute-force oracles on truncations and the randomised lemma suite."""
from __future__ import annotations

import itertools
import random
from typing import Iterable

import numpy as np

from . import kernels
from .admissible import build_principal_tree_set
from .components import critical_instances, delete_and_decompose
from .errors import CombdualError, SaturationError
from .family import Family, grade_monotone, parliament
from .presentation import Presentation, TargetSet, digest
from .separations import CROSSING, Sep, compare, corridors, inconsistent_pair, invert, le, supremum
from .toughness import toughness
from .truncation import Truncation, materialize_truncation
from .verify import VerificationReport
from .vertices import FAN, GRADED, SPINE, VertexRef, name_of

ORACLE_KINDS = ("components", "critical", "toughness")


def _canonical(X: Iterable[VertexRef]) -> bool:
    """Copy indices used inside each copy group form a prefix ``0..k-1``.

    Copies of one class (and level) are interchangeable, so any deleted set
    maps to a canonical one by renaming copies; checking canonical sets only
    loses nothing.
    """
    used: dict[tuple, set[int]] = {}
    for v in X:
        if v.kind in (FAN, GRADED):
            used.setdefault((v.kind, v.cls, v.level), set()).add(v.copy)
    return all(c == set(range(len(c))) for c in used.values())


def candidates(P: Presentation, T: Truncation, top: int, size: int, fixed: Iterable[VertexRef] = ()) -> list[VertexRef]:
    """Truncation vertices at level <= ``top`` with copy index < ``size``, plus ``fixed``."""
    out = {
        v
        for v in T.names
        if not (v.kind in (SPINE, GRADED) and v.level > top) and not (v.kind in (FAN, GRADED) and v.copy >= size)
    }
    out.update(v for v in fixed if v in T.index)
    return sorted(out)


def deleted_sets(pool: list[VertexRef], size: int, canonical: bool = True):
    for r in range(1, size + 1):
        for X in itertools.combinations(pool, r):
            if not canonical or _canonical(X):
                yield X


def symbolic_partition(P: Presentation, T: Truncation, X: frozenset) -> list[frozenset[int]]:
    D = delete_and_decompose(P, X)
    parts = []
    for c in D.explicit:
        parts.append(frozenset(T.index[v] for v in c.vertices.vertices(T.depth, T.copies) if v in T.index))
    for b in D.bundles:
        for i in b.copies.members(T.copies):
            parts.append(frozenset(T.index[v] for v in b.copy_vset(P, i).vertices(T.depth, T.copies) if v in T.index))
    return sorted((p for p in parts if p), key=min)


def truncation_partition(T: Truncation, X: frozenset) -> list[frozenset[int]]:
    removed = np.zeros(T.n, dtype=np.uint8)
    for v in X:
        removed[T.index[v]] = 1
    labels, count = kernels.components(*T.csr, removed)
    groups: list[set[int]] = [set() for _ in range(count)]
    for i, c in enumerate(labels):
        if c >= 0:
            groups[c].add(i)
    return sorted((frozenset(g) for g in groups), key=min)


def oracle_check(
    P: Presentation,
    U: TargetSet,
    kind: str,
    depth: int = 12,
    copies: int = 5,
    size: int | None = None,
    X: Iterable[VertexRef] | None = None,
) -> VerificationReport:
    if kind not in ORACLE_KINDS:
        raise ValueError(f"unknown oracle kind {kind!r}")
    rep = VerificationReport(instance=digest(P, U), certificate=f"oracle:{kind}:d={depth}:m={copies}")
    T = materialize_truncation(P, depth, copies)
    margin = P.max_span + 2
    if kind == "components":
        size = 3 if size is None else size
        sets = [tuple(X)] if X is not None else deleted_sets(candidates(P, T, depth - margin, size), size)
        _components(P, T, sets, rep)
    elif kind == "critical":
        _critical(P, T, 4 if size is None else size, rep)
    else:
        _toughness(P, U, T, 3 if size is None else size, depth - margin, rep)
    return rep.finish()


def _components(P: Presentation, T: Truncation, sets, rep: VerificationReport) -> None:
    n = 0
    for X in sets:
        X = frozenset(X)
        n += 1
        a, b = symbolic_partition(P, T, X), truncation_partition(T, X)
        if a != b:
            only = sorted(set(b) - set(a), key=min)
            bad = only[0] if only else sorted(set(a) - set(b), key=min)[0]
            rep.add(
                "components.agree",
                False,
                f"X = {sorted(map(name_of, X))}: component through {name_of(T.names[min(bad)])} differs",
            )
            return
    rep.add("components.agree", True, f"{n} deleted sets on {T.n} vertices")


def _critical(P: Presentation, T: Truncation, size: int, rep: VerificationReport) -> None:
    """Every subset of size <= ``size`` is critical in the truncation (at least m
    components with neighbourhood exactly X) iff it is critical symbolically."""
    rows = [list(X) for r in range(1, size + 1) for X in itertools.combinations(range(T.n), r)]
    prof = kernels.subset_profile(*T.csr, rows, np.zeros(T.n, dtype=np.uint8))
    found = {frozenset(T.names[i] for i in rows[k]) for k in np.nonzero(prof[:, 2] >= T.copies)[0]}
    want = {c.X for c in critical_instances(P, T.depth) if len(c.X) <= size and all(v in T.index for v in c.X)}
    extra, missing = sorted(found - want, key=sorted), sorted(want - found, key=sorted)
    detail = f"{len(rows)} subsets, {len(found)} critical"
    if extra:
        detail = f"truncation-critical but not symbolic: {sorted(map(name_of, extra[0]))}"
    elif missing:
        detail = f"symbolic but not truncation-critical: {sorted(map(name_of, missing[0]))}"
    rep.add("critical.agree", not extra and not missing, detail)


def _toughness(P: Presentation, U: TargetSet, T: Truncation, size: int, top: int, rep: VerificationReport) -> None:
    Uv = U.as_vset(P)
    umask = np.array([v in Uv for v in T.names], dtype=np.uint8)
    pool = candidates(P, T, top, size, U.explicit)
    rows = [[T.index[v] for v in X] for X in deleted_sets(pool, size, canonical=U.is_finite and not any(v.kind in (FAN, GRADED) for v in U.explicit))]
    prof = kernels.subset_profile(*T.csr, rows, umask)
    hit = np.nonzero(prof[:, 1] >= T.copies)[0]
    tough = toughness(P, U).tough
    if len(hit):
        X = [name_of(T.names[i]) for i in rows[int(hit[0])]]
        detail = f"deleting {X} leaves {int(prof[hit[0], 1])} components meeting U"
    else:
        detail = f"{len(rows)} deleted sets, none leaves {T.copies} components meeting U"
    rep.add("toughness.agree", tough == (len(hit) == 0), f"symbolic {'tough' if tough else 'not tough'}; {detail}")


# -- lemma suite -------------------------------------------------------------------------


def random_orientation(members: list[Sep], rng: random.Random) -> list[Sep]:
    """A random consistent orientation of a random subset of ``members``."""
    order = list(range(len(members)))
    rng.shuffle(order)
    keep = order[: rng.randint(0, len(order))]
    out: list[Sep] = []
    for i in keep:
        s = members[i]
        tries = [s, invert(s)] if rng.random() < 0.5 else [invert(s), s]
        for t in tries:
            if inconsistent_pair(out + [t]) is None:
                out.append(t)
                break
    return out


def lemma_problems(O: list[Sep], ambient: list[Sep], subset: int = 5) -> list[tuple[str, str]]:
    """Failures of the corridor lemmas on one consistent orientation."""
    out = []
    if not O:
        return out
    for bound in sorted({s.order for s in O}):
        gammas = corridors(O, bound)
        sups = [supremum([O[i] for i in g]) for g in gammas]
        for g, sup in zip(gammas, sups):
            if any(compare(sup, t) == CROSSING for t in ambient):
                out.append(("lemma.sup-nested", f"order {bound}: a corridor supremum crosses the tree set"))
            if sup.order > bound:
                out.append(("lemma.sup-order", f"order {bound}: supremum has order {sup.order}"))
            seps = sorted(sup.sep)
            for Z in itertools.combinations(seps, min(subset, len(seps))):
                if not any(set(Z) <= O[i].sep for i in g):
                    out.append(("lemma.sup-separator", f"order {bound}: {sorted(map(name_of, Z))} in no single member"))
                    break
        for a, b in itertools.combinations(range(len(sups)), 2):
            if sups[a] != sups[b] and not le(sups[a], invert(sups[b])):
                out.append(("lemma.sups-star", f"order {bound}: two corridor suprema are not a star"))
    return out


def property_suite(P: Presentation, seed: int = 0, U: TargetSet | None = None, rounds: int = 100) -> VerificationReport:
    U = U if U is not None else TargetSet()
    rep = VerificationReport(instance=digest(P, U), certificate=f"properties:seed={seed}")
    try:
        _, F = build_principal_tree_set(P, U)
    except CombdualError as e:
        rep.add("suite.tree-set", False, str(e))
        return rep.finish()
    mem = F.instances()
    members = [m.sep for m in mem]
    ambient = members + [invert(s) for s in members]
    rng = random.Random(seed)
    found: dict[str, str] = {}
    for _ in range(rounds):
        O = random_orientation(members, rng)
        for name, detail in lemma_problems(O, ambient):
            found.setdefault(name, detail)
        fam = Family(P, U, [(f"o{i}", s) for i, s in enumerate(O)])
        try:
            pi = parliament(fam)
        except CombdualError as e:
            found.setdefault("lemma.grade-monotone", f"parliament failed: {e}")
            continue
        bad = grade_monotone(pi)
        if bad is not None:
            found.setdefault("lemma.grade-monotone", f"{bad[0]} < {bad[1]} without a grade increase")
    if F.rules:
        # bounded-order chains have a supremum outside the window; the random
        # orientations above already cover their instances
        try:
            bad = grade_monotone(parliament(F))
        except SaturationError:
            bad = None
        if bad is not None:
            found.setdefault("lemma.grade-monotone", f"principal parliament: {bad[0]} < {bad[1]}")
    for name in ("lemma.grade-monotone", "lemma.sup-nested", "lemma.sup-order", "lemma.sup-separator", "lemma.sups-star"):
        rep.add(name, name not in found, found.get(name, f"{rounds} orientations of {len(members)} separations"))
    return rep.finish()

