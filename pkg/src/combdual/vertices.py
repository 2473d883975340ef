"""Vertex references for presented graphs.

A vertex is a small named tuple ``(kind, cls, level, copy, local)``.  Tuple
ordering gives the canonical order: kernel < spine < fan copies < graded
copies, lexicographic within each kind.
"""
from __future__ import annotations

import re
from typing import NamedTuple

KERNEL = 0
SPINE = 1
FAN = 2
GRADED = 3


class VertexRef(NamedTuple):
    kind: int
    cls: int = 0
    level: int = 0
    copy: int = 0
    local: int = 0

    @property
    def is_copy(self) -> bool:
        return self.kind >= FAN

    @property
    def copy_key(self) -> tuple[int, int, int, int]:
        """Identifies the copy a copy-vertex belongs to."""
        return (self.kind, self.cls, self.level, self.copy)

    def __str__(self) -> str:
        return name_of(self)

    def __repr__(self) -> str:
        return f"V({name_of(self)})"


def kernel(i: int) -> VertexRef:
    return VertexRef(KERNEL, 0, 0, 0, i)


def spine(level: int) -> VertexRef:
    return VertexRef(SPINE, 0, level, 0, 0)


def fan_copy(cls: int, copy: int, local: int) -> VertexRef:
    return VertexRef(FAN, cls, 0, copy, local)


def graded_copy(cls: int, level: int, copy: int, local: int) -> VertexRef:
    return VertexRef(GRADED, cls, level, copy, local)


def class_name(kind: int, cls: int) -> str:
    return f"c{cls}" if kind == FAN else f"g{cls}"


def parse_class_name(name: str) -> tuple[int, int]:
    m = re.fullmatch(r"([cg])(\d+)", name)
    if not m:
        raise ValueError(f"bad class id {name!r}")
    return (FAN if m.group(1) == "c" else GRADED, int(m.group(2)))


def name_of(v: VertexRef) -> str:
    if v.kind == KERNEL:
        return f"k{v.local}"
    if v.kind == SPINE:
        return f"s{v.level}"
    if v.kind == FAN:
        return f"c{v.cls}[{v.copy}].{v.local}"
    return f"g{v.cls}[{v.level},{v.copy}].{v.local}"


_NAME = re.compile(
    r"k(?P<k>\d+)|s(?P<s>\d+)"
    r"|c(?P<c>\d+)\[(?P<ci>\d+)\]\.(?P<cl>\d+)"
    r"|g(?P<g>\d+)\[(?P<gn>\d+),(?P<gi>\d+)\]\.(?P<gl>\d+)"
)


def parse_vertex(text: str) -> VertexRef:
    m = _NAME.fullmatch(text.strip())
    if not m:
        raise ValueError(f"bad vertex name {text!r}")
    if m.group("k") is not None:
        return kernel(int(m.group("k")))
    if m.group("s") is not None:
        return spine(int(m.group("s")))
    if m.group("c") is not None:
        return fan_copy(int(m.group("c")), int(m.group("ci")), int(m.group("cl")))
    return graded_copy(
        int(m.group("g")), int(m.group("gn")), int(m.group("gi")), int(m.group("gl"))
    )
