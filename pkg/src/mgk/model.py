"""Graph representation, degrees, regularity classes and components."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DuplicateVertexPosition, IndexOutOfRange, SelfLoop
from .unionfind import DisjointSet

#: minimum vertex spacing enforced by :func:`build_graph`, in graph units
DEFAULT_MERGE_TOLERANCE = 1e-6


class Point2(NamedTuple):
    x: float
    y: float


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """A straight-line drawing: vertex coordinates plus undirected edges.

    ``coords`` is ``(n, 2)`` float, ``edges`` is ``(m, 2)`` int with
    ``i < j`` in every row. ``scale`` is raw units per unit edge (1.0 once
    normalized). ``raw`` keeps the figure coordinates the vertices came
    from, when known. Arrays are read-only.
    """

    coords: np.ndarray
    edges: np.ndarray
    scale: float = 1.0
    raw: np.ndarray | None = field(default=None, repr=False)

    @property
    def n_vertices(self) -> int:
        return int(self.coords.shape[0])

    @property
    def n_edges(self) -> int:
        return int(self.edges.shape[0])

    @property
    def points(self) -> list[Point2]:
        return [Point2(float(x), float(y)) for x, y in self.coords]

    def edge_lengths(self) -> np.ndarray:
        d = self.coords[self.edges[:, 0]] - self.coords[self.edges[:, 1]]
        return np.hypot(d[:, 0], d[:, 1])

    def with_coords(self, coords: np.ndarray, scale: float | None = None) -> "Graph":
        """Same edges and provenance, new vertex positions (no re-validation)."""
        coords = np.array(coords, dtype=float).reshape(self.coords.shape)
        return Graph(
            _frozen(coords), self.edges, self.scale if scale is None else float(scale), self.raw
        )

    def transformed(self, matrix, offset=(0.0, 0.0)) -> "Graph":
        """Apply ``x -> matrix @ x + offset`` to every vertex."""
        m = np.asarray(matrix, dtype=float)
        return self.with_coords(self.coords @ m.T + np.asarray(offset, dtype=float))

    def relabeled(self, perm: Sequence[int]) -> "Graph":
        """Vertex ``v`` of ``self`` becomes vertex ``perm[v]`` of the result."""
        perm = np.asarray(perm, dtype=np.int64)
        coords = np.empty_like(self.coords)
        coords[perm] = self.coords
        raw = None
        if self.raw is not None:
            raw = np.empty_like(self.raw)
            raw[perm] = self.raw
        e = np.sort(perm[self.edges], axis=1)
        return Graph(_frozen(coords), _frozen(e), self.scale, None if raw is None else _frozen(raw))

    def equals(self, other: "Graph", atol: float = 0.0) -> bool:
        return (
            self.coords.shape == other.coords.shape
            and np.array_equal(self.edges, other.edges)
            and bool(np.allclose(self.coords, other.coords, rtol=0.0, atol=atol))
            and self.scale == other.scale
        )


def build_graph(
    points: Iterable,
    edge_pairs: Iterable[Sequence[int]],
    *,
    merge_tolerance: float = DEFAULT_MERGE_TOLERANCE,
    scale: float = 1.0,
    raw: np.ndarray | None = None,
) -> Graph:
    """Validate and assemble a :class:`Graph`.

    Edges are stored as ``(min, max)`` in first-seen order; repeats of the
    same unordered pair are dropped.
    """
    coords = np.array([tuple(p) for p in points], dtype=float).reshape(-1, 2)
    if not np.all(np.isfinite(coords)):
        raise ValueError("vertex coordinates must be finite")
    n = coords.shape[0]

    seen: set[tuple[int, int]] = set()
    kept: list[tuple[int, int]] = []
    for pair in edge_pairs:
        i, j = (int(v) for v in pair)
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRange(f"edge ({i}, {j}) references a vertex outside 0..{n - 1}")
        if i == j:
            raise SelfLoop(f"self-loop at vertex {i}")
        key = (i, j) if i < j else (j, i)
        if key not in seen:
            seen.add(key)
            kept.append(key)

    if n >= 2:
        from .kernels import min_vertex_vertex

        d, a, b = min_vertex_vertex(coords)
        if d <= merge_tolerance:
            raise DuplicateVertexPosition(
                f"vertices {a} and {b} are {d:.3g} apart (merge tolerance {merge_tolerance:g})"
            )

    edges = np.array(kept, dtype=np.int64).reshape(-1, 2)
    if raw is not None:
        raw = _frozen(np.array(raw, dtype=float).reshape(n, 2))
    return Graph(_frozen(coords), _frozen(edges), float(scale), raw)


def degree_sequence(g: Graph) -> list[int]:
    return np.bincount(g.edges.ravel(), minlength=g.n_vertices).tolist()


class Regularity(Enum):
    FOUR_REGULAR = "FourRegular"
    TWO_FOUR_REGULAR = "TwoFourRegular"
    IRREGULAR = "Irregular"


@dataclass(frozen=True)
class RegularityClass:
    kind: Regularity
    count2: int = 0
    histogram: tuple[tuple[int, int], ...] = ()

    def __str__(self) -> str:
        if self.kind is Regularity.FOUR_REGULAR:
            return "FourRegular"
        if self.kind is Regularity.TWO_FOUR_REGULAR:
            return f"TwoFourRegular({self.count2})"
        inner = ",".join(f"{d}:{c}" for d, c in self.histogram)
        return f"Irregular({{{inner}}})"

    @property
    def is_matchstick_class(self) -> bool:
        return self.kind is not Regularity.IRREGULAR


def classify_regularity(g: Graph) -> RegularityClass:
    hist = Counter(degree_sequence(g))
    if hist and set(hist) == {4}:
        return RegularityClass(Regularity.FOUR_REGULAR)
    # both degrees must occur: an all-degree-2 graph (a cycle) is not (2,4)-regular
    if set(hist) == {2, 4}:
        return RegularityClass(Regularity.TWO_FOUR_REGULAR, count2=hist[2])
    return RegularityClass(Regularity.IRREGULAR, histogram=tuple(sorted(hist.items())))


def connected_components(g: Graph) -> list[Graph]:
    """Split into connected pieces, ordered by smallest original vertex index.

    Vertex order inside a piece follows the original order, so indices are
    compacted monotonically; edge order is preserved.
    """
    ds = DisjointSet(g.n_vertices)
    for i, j in g.edges:
        ds.union(int(i), int(j))
    groups = ds.groups()
    if len(groups) == 1:
        return [g]

    label = np.empty(g.n_vertices, dtype=np.int64)
    local = np.empty(g.n_vertices, dtype=np.int64)
    for k, members in enumerate(groups):
        label[members] = k
        local[members] = np.arange(len(members))

    edge_comp = label[g.edges[:, 0]]
    out = []
    for k, members in enumerate(groups):
        e = local[g.edges[edge_comp == k]]
        raw = None if g.raw is None else _frozen(g.raw[members].copy())
        out.append(Graph(_frozen(g.coords[members].copy()), _frozen(e.copy()), g.scale, raw))
    return out


def is_connected(g: Graph) -> bool:
    return g.n_vertices > 0 and len(connected_components(g)) == 1
