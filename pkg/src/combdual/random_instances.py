"""Seeded random fan-class instances (no spine) for the dichotomy sweeps."""
from __future__ import annotations

import random

from .presentation import FORMAT, Presentation, TargetSet, instance_from_dict


def _connected_edges(rng: random.Random, n: int, extra: float) -> list[list[int]]:
    edges = [[rng.randrange(i), i] for i in range(1, n)]
    for a in range(n):
        for b in range(a + 1, n):
            if [a, b] not in edges and rng.random() < extra:
                edges.append([a, b])
    return sorted(edges)


def random_fan_document(seed: int, max_kernel: int = 8, max_classes: int = 4) -> dict:
    rng = random.Random(seed)
    k = rng.randint(1, max_kernel)
    classes = []
    for _ in range(rng.randint(0, max_classes)):
        t = rng.randint(1, 3)
        att = rng.sample(range(k), rng.randint(1, min(3, k)))
        attachments = sorted({(rng.randrange(t), f"k{x}") for x in att})
        classes.append(
            {
                "template": {"n": t, "edges": _connected_edges(rng, t, 0.3)},
                "attachments": [list(a) for a in attachments],
            }
        )
    target: dict = {"explicit": sorted(f"k{x}" for x in rng.sample(range(k), rng.randint(0, k)))}
    masks = {}
    for c, cl in enumerate(classes):
        if rng.random() < 0.25:
            masks[f"c{c}"] = sorted(rng.sample(range(cl["template"]["n"]), 1))
    if masks:
        target["classMasks"] = masks
    return {
        "format": FORMAT,
        "name": f"RAND-{seed}",
        "kernel": {"n": k, "edges": _connected_edges(rng, k, 0.25)},
        "spine": {"present": False},
        "fanClasses": classes,
        "target": target,
    }


def random_fan_instance(seed: int, **kw) -> tuple[Presentation, TargetSet]:
    return instance_from_dict(random_fan_document(seed, **kw))
