"""MGF v1: the line-oriented matchstick graph text format.

::

    mgf 1
    # optional comment lines
    v 0 0 0
    v 1 1 0
    e 0 1

Vertex lines come first with indices 0..n-1 in order, then edge lines with
``i < j``. Fields are separated by one space and the file ends with a
newline. Coordinates are written with 17 significant digits, which makes
``read_mgf(write_mgf(g))`` exact.
"""

from __future__ import annotations

import math
from typing import Iterable

from .errors import DuplicateVertexPosition, FormatError, IndexOutOfRange, SelfLoop
from .model import Graph, build_graph

HEADER = "mgf 1"


def _fmt(x: float) -> str:
    s = f"{x:.17g}"
    return "0" if s == "-0" else s


def write_mgf(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [HEADER]
    for c in comments:
        for part in str(c).splitlines() or [""]:
            lines.append(f"# {part}".rstrip())
    lines.extend(f"v {k} {_fmt(x)} {_fmt(y)}" for k, (x, y) in enumerate(g.coords.tolist()))
    lines.extend(f"e {i} {j}" for i, j in g.edges.tolist())
    return "\n".join(lines) + "\n"


def _int(tok: str, lineno: int) -> int:
    if not tok.isdigit():
        raise FormatError(f"expected a non-negative integer, got {tok!r}", lineno)
    return int(tok)


def _real(tok: str, lineno: int) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise FormatError(f"expected a decimal number, got {tok!r}", lineno) from None
    if not math.isfinite(v):
        raise FormatError(f"non-finite coordinate {tok!r}", lineno)
    return v


def read_mgf(text: str) -> Graph:
    if not text.endswith("\n"):
        raise FormatError("missing trailing newline", text.count("\n") + 1)
    lines = text[:-1].split("\n")
    if lines[0] != HEADER:
        raise FormatError(f"expected header {HEADER!r}", 1)

    points: list[tuple[float, float]] = []
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, line in enumerate(lines[1:], start=2):
        if line.startswith("#"):
            continue
        fields = line.split(" ")
        tag = fields[0]
        if tag == "v":
            if edges:
                raise FormatError("vertex line after edge lines", lineno)
            if len(fields) != 4:
                raise FormatError("vertex line needs: v <index> <x> <y>", lineno)
            idx = _int(fields[1], lineno)
            if idx != len(points):
                raise FormatError(f"vertex index {idx} out of order, expected {len(points)}", lineno)
            points.append((_real(fields[2], lineno), _real(fields[3], lineno)))
        elif tag == "e":
            if len(fields) != 3:
                raise FormatError("edge line needs: e <i> <j>", lineno)
            i, j = _int(fields[1], lineno), _int(fields[2], lineno)
            if not i < j:
                raise FormatError(f"edge ({i}, {j}) must have i < j", lineno)
            if j >= len(points):
                raise FormatError(f"edge ({i}, {j}) references a vertex outside 0..{len(points) - 1}", lineno)
            if (i, j) in seen:
                raise FormatError(f"duplicate edge ({i}, {j})", lineno)
            seen.add((i, j))
            edges.append((i, j))
        else:
            raise FormatError(f"unknown record {tag!r}", lineno)

    try:
        return build_graph(points, edges, merge_tolerance=0.0)
    except (DuplicateVertexPosition, IndexOutOfRange, SelfLoop) as exc:
        raise FormatError(str(exc)) from exc
