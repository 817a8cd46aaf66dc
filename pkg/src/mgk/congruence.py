"""Duplicate detection: isomorphism, planar congruence, dedup.

Two examples are the same if some relabeling maps one drawing onto the
other by a rotation, translation and possibly a reflection.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import IsomorphismTimeout
from .model import Graph, degree_sequence

DEFAULT_TOLERANCE = 1e-6
NODE_BUDGET = 10**7


@dataclass(frozen=True)
class Fingerprint:
    vertex_count: int
    edge_count: int
    degrees: tuple[int, ...]
    distances: tuple[float, ...] = field(repr=False)


def _pairwise(coords: np.ndarray) -> np.ndarray:
    diff = coords[:, None, :] - coords[None, :, :]
    return np.hypot(diff[..., 0], diff[..., 1])


def fingerprint(g: Graph) -> Fingerprint:
    n = g.n_vertices
    iu = np.triu_indices(n, 1)
    d = np.sort(_pairwise(g.coords)[iu])
    rounded = np.round(d, 6) + 0.0
    return Fingerprint(n, g.n_edges, tuple(sorted(degree_sequence(g))), tuple(rounded.tolist()))


# --------------------------------------------------------------------------
# isomorphism
# --------------------------------------------------------------------------

def _adjacency(g: Graph) -> list[set[int]]:
    adj = [set() for _ in range(g.n_vertices)]
    for i, j in g.edges.tolist():
        adj[i].add(j)
        adj[j].add(i)
    return adj


def _refine_colors(adj_a: list[set[int]], adj_b: list[set[int]]) -> tuple[list[int], list[int]]:
    """Joint colour refinement starting from degrees.

    Vertices that can correspond under an isomorphism always end up with
    the same colour, so colours are safe candidate filters.
    """
    ca = [len(s) for s in adj_a]
    cb = [len(s) for s in adj_b]
    while True:
        sig_a = [(ca[v], tuple(sorted(ca[w] for w in adj_a[v]))) for v in range(len(adj_a))]
        sig_b = [(cb[v], tuple(sorted(cb[w] for w in adj_b[v]))) for v in range(len(adj_b))]
        palette = {s: k for k, s in enumerate(sorted(set(sig_a) | set(sig_b)))}
        na = [palette[s] for s in sig_a]
        nb = [palette[s] for s in sig_b]
        if len(set(na)) == len(set(ca)) and len(set(nb)) == len(set(cb)):
            return na, nb
        ca, cb = na, nb


def _match_order(adj: list[set[int]], colors: list[int]) -> list[int]:
    """Rarest colour first, then always the vertex with most placed neighbours."""
    n = len(adj)
    freq = Counter(colors)
    placed: list[int] = []
    inside = [False] * n
    links = [0] * n
    while len(placed) < n:
        best = None
        for v in range(n):
            if inside[v]:
                continue
            key = (-links[v], freq[colors[v]], v)
            if best is None or key < best[0]:
                best = (key, v)
        v = best[1]
        inside[v] = True
        placed.append(v)
        for w in adj[v]:
            links[w] += 1
    return placed


Compatible = Callable[[int, int, dict], bool]


def iter_isomorphisms(
    a: Graph,
    b: Graph,
    compatible: Compatible | None = None,
    node_budget: int = NODE_BUDGET,
) -> Iterator[list[int]]:
    """Yield adjacency-preserving bijections ``m`` (vertex ``v`` of a -> ``m[v]`` of b).

    ``compatible(u, v, partial)`` may veto extending the partial map with
    ``u -> v``. Exploration is deterministic: candidates are tried in
    increasing index order.
    """
    if a.n_vertices != b.n_vertices or a.n_edges != b.n_edges:
        return
    if sorted(degree_sequence(a)) != sorted(degree_sequence(b)):
        return
    n = a.n_vertices
    if n == 0:
        yield []
        return

    adj_a, adj_b = _adjacency(a), _adjacency(b)
    col_a, col_b = _refine_colors(adj_a, adj_b)
    if Counter(col_a) != Counter(col_b):
        return
    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(col_b[v], []).append(v)

    order = _match_order(adj_a, col_a)
    mapping: dict[int, int] = {}
    used = [False] * n
    nodes = 0

    def candidates(u: int) -> list[int]:
        anchors = [w for w in adj_a[u] if w in mapping]
        if anchors:
            pool = sorted(adj_b[mapping[min(anchors)]])
            return [v for v in pool if not used[v] and col_b[v] == col_a[u]]
        return [v for v in by_color[col_a[u]] if not used[v]]

    def feasible(u: int, v: int) -> bool:
        mapped_nbrs = 0
        for w in adj_a[u]:
            if w in mapping:
                if mapping[w] not in adj_b[v]:
                    return False
                mapped_nbrs += 1
        return mapped_nbrs == sum(1 for x in adj_b[v] if used[x])

    def extend(depth: int) -> Iterator[list[int]]:
        nonlocal nodes
        if depth == n:
            yield [mapping[v] for v in range(n)]
            return
        u = order[depth]
        for v in candidates(u):
            nodes += 1
            if nodes > node_budget:
                raise IsomorphismTimeout(f"isomorphism search exceeded {node_budget} nodes")
            if not feasible(u, v):
                continue
            if compatible is not None and not compatible(u, v, mapping):
                continue
            mapping[u] = v
            used[v] = True
            yield from extend(depth + 1)
            del mapping[u]
            used[v] = False

    yield from extend(0)


def is_isomorphic(a: Graph, b: Graph, node_budget: int = NODE_BUDGET) -> list[int] | None:
    """First isomorphism found, or None."""
    return next(iter_isomorphisms(a, b, node_budget=node_budget), None)


# --------------------------------------------------------------------------
# congruence
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Isometry:
    """``x -> rot(angle) @ flip @ x + translation``, ``flip = diag(1, -1)`` if reflected."""

    angle: float
    translation: tuple[float, float]
    reflection: bool

    @property
    def matrix(self) -> np.ndarray:
        c, s = math.cos(self.angle), math.sin(self.angle)
        rot = np.array([[c, -s], [s, c]])
        return rot @ np.diag([1.0, -1.0]) if self.reflection else rot

    def apply(self, coords: np.ndarray) -> np.ndarray:
        return np.asarray(coords, dtype=float) @ self.matrix.T + np.asarray(self.translation)


@dataclass(frozen=True)
class CongruenceResult:
    congruent: bool
    vertex_mapping: list[int] | None
    isometry: Isometry | None
    max_alignment_error: float


def best_fit_isometry(src: np.ndarray, dst: np.ndarray) -> tuple[Isometry, float]:
    """Isometry taking ``src`` rows closest to ``dst`` rows; reflection tried explicitly.

    Returns the branch with the smaller maximum per-point error, and that error.
    """
    src = np.asarray(src, dtype=float)
    dst = np.asarray(dst, dtype=float)
    cs, cd = src.mean(axis=0), dst.mean(axis=0)
    best = None
    for reflect in (False, True):
        a = src - cs
        if reflect:
            a = a * np.array([1.0, -1.0])
        b = dst - cd
        sin_part = float(np.sum(a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]))
        cos_part = float(np.sum(a[:, 0] * b[:, 0] + a[:, 1] * b[:, 1]))
        angle = math.atan2(sin_part, cos_part)
        probe = Isometry(angle, (0.0, 0.0), reflect)
        shift = cd - cs @ probe.matrix.T
        iso = Isometry(angle, (float(shift[0]), float(shift[1])), reflect)
        diff = iso.apply(src) - dst
        err = float(np.max(np.hypot(diff[:, 0], diff[:, 1]), initial=0.0))
        if best is None or err < best[1]:
            best = (iso, err)
    return best


def is_congruent(
    a: Graph, b: Graph, tol: float = DEFAULT_TOLERANCE, node_budget: int = NODE_BUDGET
) -> CongruenceResult:
    """Search isomorphisms of ``a`` onto ``b`` for one realized by an isometry.

    ``vertex_mapping[v]`` is the vertex of ``b`` matched to vertex ``v`` of
    ``a`` and ``isometry`` carries ``a`` onto ``b``.

    Partial maps are pruned when a pairwise distance disagrees by more than
    ``2 * tol``, which no map within ``tol`` per vertex can violate.
    """
    da, db = _pairwise(a.coords), _pairwise(b.coords)
    slack = 2.0 * tol

    def compatible(u: int, v: int, partial: dict) -> bool:
        for x, y in partial.items():
            if abs(da[u, x] - db[v, y]) > slack:
                return False
        return True

    # several maps can pass when the drawing is (nearly) symmetric; keep the tightest
    best = None
    best_err = math.inf
    for m in iter_isomorphisms(a, b, compatible, node_budget):
        iso, err = best_fit_isometry(a.coords, b.coords[m])
        if err < best_err:
            best_err = err
            if err <= tol:
                best = (m, iso)
    if best is None:
        return CongruenceResult(False, None, None, best_err)
    return CongruenceResult(True, best[0], best[1], best_err)


# --------------------------------------------------------------------------
# dedup
# --------------------------------------------------------------------------

@dataclass
class EquivalenceClass:
    representative: str
    members: list[str]
    # member id -> how it maps onto the representative
    alignments: dict[str, CongruenceResult] = field(default_factory=dict)


def _bucket_key(g: Graph) -> tuple:
    return g.n_vertices, g.n_edges, tuple(sorted(degree_sequence(g)))


def dedup(
    entries: Sequence,
    tol: float = DEFAULT_TOLERANCE,
    *,
    key: Callable = lambda e: (e.id, e.graph),
) -> list[EquivalenceClass]:
    """Group entries whose graphs are congruent.

    ``key`` turns an entry into ``(id, graph)``; the default reads ``.id``
    and ``.graph``. Entries are visited in id order and each joins the
    first class whose representative it matches, so the outcome does not
    depend on input order. Buckets share vertex/edge counts and degree
    multiset, and sorted pairwise distances are compared before the
    isomorphism search runs.
    """
    items = sorted((key(e) for e in entries), key=lambda t: t[0])
    buckets: dict[tuple, list[tuple[EquivalenceClass, Graph, np.ndarray]]] = {}
    classes: list[EquivalenceClass] = []
    for ident, g in items:
        dists = np.sort(_pairwise(g.coords)[np.triu_indices(g.n_vertices, 1)])
        home = None
        for cls, rep, rep_d in buckets.get(_bucket_key(g), []):
            if np.max(np.abs(rep_d - dists), initial=0.0) > 2.0 * tol:
                continue
            res = is_congruent(g, rep, tol)
            if res.congruent:
                home = cls
                cls.members.append(ident)
                cls.alignments[ident] = res
                break
        if home is None:
            cls = EquivalenceClass(ident, [ident])
            buckets.setdefault(_bucket_key(g), []).append((cls, g, dists))
            classes.append(cls)
    return classes
