"""Figure text -> segments -> graph, plus scale normalization.

Figure sources list every edge as ``(x1,y1) -- (x2,y2)`` and repeat a
vertex's coordinates once per incident edge, sometimes with the last
printed digit differing. Endpoints are therefore clustered with a small
radius before edges are formed.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.spatial import cKDTree

from .errors import MalformedCoordinate, MergeAmbiguity, NoEdges, NonPositiveScale
from .model import Graph, Point2, build_graph
from .unionfind import DisjointSet

log = logging.getLogger(__name__)

_NUM = r"[-+]?[0-9.][-+0-9.eE]*"
_COORD = rf"\(\s*({_NUM})\s*,\s*({_NUM})\s*\)"
_COORD_RE = re.compile(_COORD)
_CHAIN_RE = re.compile(rf"{_COORD}(?:\s*--\s*{_COORD})+")


class Segment(NamedTuple):
    a: Point2
    b: Point2

    @property
    def length(self) -> float:
        return float(np.hypot(self.b.x - self.a.x, self.b.y - self.a.y))


@dataclass(frozen=True)
class IngestOptions:
    merge_tolerance: float = 0.01
    expected_unit: float | None = None

    def __post_init__(self):
        if not self.merge_tolerance > 0:
            raise ValueError("merge_tolerance must be positive")
        if self.expected_unit is not None:
            if not self.expected_unit > 0:
                raise ValueError("expected_unit must be positive")
            if self.merge_tolerance >= 0.5 * self.expected_unit:
                raise ValueError("merge_tolerance must be below half the unit edge length")


def _to_float(tok: str, where: int) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise MalformedCoordinate(f"cannot parse number {tok!r} at offset {where}") from None
    if not np.isfinite(v):
        raise MalformedCoordinate(f"non-finite coordinate {tok!r} at offset {where}")
    return v


def extract_segments(text: str) -> list[Segment]:
    """Every ``P -- Q`` link in ``text``; a chain ``A -- B -- C`` gives AB and BC."""
    segments: list[Segment] = []
    for chain in _CHAIN_RE.finditer(text):
        pts = [
            Point2(_to_float(m.group(1), chain.start() + m.start()), _to_float(m.group(2), chain.start() + m.start()))
            for m in _COORD_RE.finditer(chain.group(0))
        ]
        for a, b in zip(pts, pts[1:]):
            if a == b:
                log.warning("skipping zero-length segment at %s", a)
                continue
            segments.append(Segment(a, b))
    return segments


def unify_endpoints(segments: list[Segment], opts: IngestOptions | None = None) -> Graph:
    """Merge nearby endpoints into vertices and turn segments into edges.

    Endpoints closer than ``merge_tolerance`` are joined transitively and
    replaced by their centroid. Vertices are numbered by first appearance.
    The returned graph is in raw units with ``scale`` set to the
    estimated unit length.
    """
    opts = opts or IngestOptions()
    if not segments:
        raise NoEdges("no segments to unify")
    pts = np.array([[s.a.x, s.a.y, s.b.x, s.b.y] for s in segments], dtype=float).reshape(-1, 2)

    ds = DisjointSet(len(pts))
    for i, j in sorted(cKDTree(pts).query_pairs(r=opts.merge_tolerance)):
        ds.union(i, j)

    groups = ds.groups()
    vertex_of = np.empty(len(pts), dtype=np.int64)
    centroids = np.empty((len(groups), 2))
    limit = 3.0 * opts.merge_tolerance
    for k, members in enumerate(groups):
        vertex_of[members] = k
        block = pts[members]
        centroids[k] = block.mean(axis=0)
        if len(members) > 2:
            diam = np.max(np.hypot(*(block[:, None, :] - block[None, :, :]).transpose(2, 0, 1)))
        elif len(members) == 2:
            diam = float(np.hypot(*(block[0] - block[1])))
        else:
            diam = 0.0
        if diam > limit:
            raise MergeAmbiguity(
                f"endpoint group around ({centroids[k][0]:.4f}, {centroids[k][1]:.4f}) spans "
                f"{diam:.4g} > 3 x merge_tolerance; tolerance too large for this drawing"
            )

    pairs = vertex_of.reshape(-1, 2)
    g = build_graph(centroids, pairs, merge_tolerance=0.0, raw=centroids)
    return Graph(g.coords, g.edges, estimate_scale(g, opts), g.raw)


def estimate_scale(g: Graph, opts: IngestOptions | None = None) -> float:
    """Raw units per unit edge: ``expected_unit`` if given, else the median edge length."""
    if opts is not None and opts.expected_unit is not None:
        return float(opts.expected_unit)
    if g.n_edges == 0:
        raise NoEdges("cannot estimate scale of a graph without edges")
    return float(np.median(g.edge_lengths()))


def normalize(g: Graph, scale: float) -> Graph:
    """Divide coordinates by ``scale`` so edges have length close to 1."""
    if not scale > 0:
        raise NonPositiveScale(f"scale must be positive, got {scale!r}")
    if scale == 1.0:
        return g.with_coords(g.coords, scale=1.0)
    return g.with_coords(g.coords / scale, scale=1.0)


def ingest_text(text: str, opts: IngestOptions | None = None) -> Graph:
    """extract -> unify -> normalize, in one call."""
    opts = opts or IngestOptions()
    segments = extract_segments(text)
    if not segments:
        raise NoEdges("no segments found")
    g = unify_endpoints(segments, opts)
    return normalize(g, g.scale)
