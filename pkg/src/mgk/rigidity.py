"""Infinitesimal rigidity of bar-joint frameworks in the plane.

A velocity assignment ``u`` (2 numbers per vertex) preserves every edge
length to first order iff ``R u = 0``. Rigid-body motions always do, so
``internal_dof = 2|V| - 3 - rank(R)`` counts the remaining flexes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateFramework
from .kernels import constraint_matrix
from .model import Graph

TRIVIAL_DIM = 2 + 1
DEFAULT_RANK_TOL = 1e-8


@dataclass(frozen=True)
class RigidityReport:
    edge_count: int
    vertex_count: int
    rank: int
    trivial_dim: int
    internal_dof: int
    flex_basis: np.ndarray = field(repr=False)
    rank_tolerance_used: float
    singular_values: np.ndarray = field(repr=False, default=None)

    @property
    def classification(self) -> str:
        return "rigid" if self.internal_dof == 0 else "flexible"

    @property
    def rigid(self) -> bool:
        return self.internal_dof == 0


def rigidity_matrix(g: Graph) -> np.ndarray:
    """Row for edge ``(i, j)``: ``p_i - p_j`` under vertex i, ``p_j - p_i`` under j."""
    return constraint_matrix(g.coords, g.edges, 1.0)


def _rank_threshold(s: np.ndarray, shape: tuple[int, int], tol_factor: float) -> float:
    if s.size == 0:
        return 0.0
    return tol_factor * float(s[0]) * max(shape)


def numeric_rank(m: np.ndarray, tol_factor: float = DEFAULT_RANK_TOL) -> int:
    """Count of singular values above ``tol_factor * s_max * max(rows, cols)``."""
    m = np.asarray(m, dtype=float)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > _rank_threshold(s, m.shape, tol_factor)))


def trivial_motions(coords: np.ndarray) -> np.ndarray:
    """Orthonormal ``(2n, 3)`` basis of planar translations and rotation."""
    c = np.asarray(coords, dtype=float)
    n = c.shape[0]
    t = np.zeros((2 * n, 3))
    t[0::2, 0] = 1.0
    t[1::2, 1] = 1.0
    centered = c - c.mean(axis=0)
    t[0::2, 2] = -centered[:, 1]
    t[1::2, 2] = centered[:, 0]
    q, _ = np.linalg.qr(t)
    return q


def _check_framework(g: Graph) -> None:
    if g.n_vertices < 3:
        raise DegenerateFramework("need at least 3 vertices")
    centered = g.coords - g.coords.mean(axis=0)
    s = np.linalg.svd(centered, compute_uv=False)
    if s[1] <= 1e-9 * max(s[0], 1.0):
        raise DegenerateFramework("all vertices are collinear")


def analyze_rigidity(g: Graph, tol_factor: float = DEFAULT_RANK_TOL) -> RigidityReport:
    _check_framework(g)
    n = g.n_vertices
    R = rigidity_matrix(g)
    ncols = 2 * n
    if R.shape[0]:
        _, s, vt = np.linalg.svd(R)
    else:
        s, vt = np.zeros(0), np.eye(ncols)
    thresh = _rank_threshold(s, R.shape, tol_factor)
    rank = int(np.sum(s > thresh)) if s.size and s[0] > 0 else 0
    internal = ncols - TRIVIAL_DIM - rank

    if internal > 0:
        null = vt[rank:].T
        q = trivial_motions(g.coords)
        proj = null - q @ (q.T @ null)
        u, _, _ = np.linalg.svd(proj, full_matrices=False)
        flex = u[:, :internal].T.copy()
    else:
        flex = np.zeros((0, ncols))

    return RigidityReport(
        edge_count=g.n_edges,
        vertex_count=n,
        rank=rank,
        trivial_dim=TRIVIAL_DIM,
        internal_dof=internal,
        flex_basis=flex,
        rank_tolerance_used=thresh,
        singular_values=s,
    )
