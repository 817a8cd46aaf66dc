"""Hot numeric kernels: jacobian assembly and all-pairs clearance scans.

Every kernel exists twice: a loop version compiled with numba and a
vectorized numpy version. Both return the *first* minimizer in
lexicographic pair order so results agree exactly, not just in value.
The public functions dispatch on :data:`USE_NUMBA`.
"""

from __future__ import annotations

import numpy as np

from ._accel import NUMBA_AVAILABLE, njit

USE_NUMBA = NUMBA_AVAILABLE


# --------------------------------------------------------------------------
# numpy implementations
# --------------------------------------------------------------------------

def _constraint_matrix_np(coords, edges, factor):
    m = edges.shape[0]
    n = coords.shape[0]
    out = np.zeros((m, 2 * n))
    if m == 0:
        return out
    i = edges[:, 0]
    j = edges[:, 1]
    d = factor * (coords[i] - coords[j])
    rows = np.arange(m)
    out[rows, 2 * i] = d[:, 0]
    out[rows, 2 * i + 1] = d[:, 1]
    out[rows, 2 * j] = -d[:, 0]
    out[rows, 2 * j + 1] = -d[:, 1]
    return out


def _point_segment_np(p, a, b):
    """Distance from points ``p`` to segments ``ab`` (broadcasting)."""
    ab = b - a
    ap = p - a
    den = np.einsum("...k,...k->...", ab, ab)
    t = np.einsum("...k,...k->...", ap, ab) / np.where(den > 0.0, den, 1.0)
    t = np.clip(np.where(den > 0.0, t, 0.0), 0.0, 1.0)
    diff = p - (a + t[..., None] * ab)
    return np.hypot(diff[..., 0], diff[..., 1])


def _cross(o, a, b):
    return (a[..., 0] - o[..., 0]) * (b[..., 1] - o[..., 1]) - (a[..., 1] - o[..., 1]) * (
        b[..., 0] - o[..., 0]
    )


def _segment_segment_np(a, b, c, d):
    o1 = _cross(a, b, c)
    o2 = _cross(a, b, d)
    o3 = _cross(c, d, a)
    o4 = _cross(c, d, b)
    crossing = (o1 * o2 < 0.0) & (o3 * o4 < 0.0)
    dist = np.minimum(
        np.minimum(_point_segment_np(c, a, b), _point_segment_np(d, a, b)),
        np.minimum(_point_segment_np(a, c, d), _point_segment_np(b, c, d)),
    )
    return np.where(crossing, 0.0, dist)


def _min_vertex_vertex_np(coords):
    n = coords.shape[0]
    if n < 2:
        return np.inf, -1, -1
    a, b = np.triu_indices(n, 1)
    diff = coords[a] - coords[b]
    dist = np.hypot(diff[:, 0], diff[:, 1])
    k = int(np.argmin(dist))
    return float(dist[k]), int(a[k]), int(b[k])


def _min_vertex_edge_np(coords, edges):
    n = coords.shape[0]
    m = edges.shape[0]
    if n == 0 or m == 0:
        return np.inf, -1, -1
    v = np.repeat(np.arange(n), m)
    e = np.tile(np.arange(m), n)
    keep = (edges[e, 0] != v) & (edges[e, 1] != v)
    v, e = v[keep], e[keep]
    if v.size == 0:
        return np.inf, -1, -1
    dist = _point_segment_np(coords[v], coords[edges[e, 0]], coords[edges[e, 1]])
    k = int(np.argmin(dist))
    return float(dist[k]), int(v[k]), int(e[k])


def _edge_pairs(edges):
    m = edges.shape[0]
    p, q = np.triu_indices(m, 1)
    ep, eq = edges[p], edges[q]
    shared = (
        (ep[:, 0] == eq[:, 0]) | (ep[:, 0] == eq[:, 1]) | (ep[:, 1] == eq[:, 0]) | (ep[:, 1] == eq[:, 1])
    )
    return p, q, shared


def _min_edge_edge_np(coords, edges):
    if edges.shape[0] < 2:
        return np.inf, -1, -1
    p, q, shared = _edge_pairs(edges)
    p, q = p[~shared], q[~shared]
    if p.size == 0:
        return np.inf, -1, -1
    dist = _segment_segment_np(
        coords[edges[p, 0]], coords[edges[p, 1]], coords[edges[q, 0]], coords[edges[q, 1]]
    )
    k = int(np.argmin(dist))
    return float(dist[k]), int(p[k]), int(q[k])


def _min_adjacent_angle_np(coords, edges):
    if edges.shape[0] < 2:
        return np.inf, -1, -1
    p, q, shared = _edge_pairs(edges)
    p, q = p[shared], q[shared]
    if p.size == 0:
        return np.inf, -1, -1
    ep, eq = edges[p], edges[q]
    # pivot = the common endpoint; others = the far ends
    pivot = np.where((ep[:, 0] == eq[:, 0]) | (ep[:, 0] == eq[:, 1]), ep[:, 0], ep[:, 1])
    far_p = np.where(ep[:, 0] == pivot, ep[:, 1], ep[:, 0])
    far_q = np.where(eq[:, 0] == pivot, eq[:, 1], eq[:, 0])
    u = coords[far_p] - coords[pivot]
    w = coords[far_q] - coords[pivot]
    ang = np.abs(np.arctan2(u[:, 0] * w[:, 1] - u[:, 1] * w[:, 0], (u * w).sum(axis=1)))
    k = int(np.argmin(ang))
    return float(ang[k]), int(p[k]), int(q[k])


# --------------------------------------------------------------------------
# numba implementations
# --------------------------------------------------------------------------

@njit
def _constraint_matrix_nb(coords, edges, factor):
    m = edges.shape[0]
    n = coords.shape[0]
    out = np.zeros((m, 2 * n))
    for r in range(m):
        i = edges[r, 0]
        j = edges[r, 1]
        dx = factor * (coords[i, 0] - coords[j, 0])
        dy = factor * (coords[i, 1] - coords[j, 1])
        out[r, 2 * i] = dx
        out[r, 2 * i + 1] = dy
        out[r, 2 * j] = -dx
        out[r, 2 * j + 1] = -dy
    return out


@njit
def _pt_seg_nb(px, py, ax, ay, bx, by):
    abx = bx - ax
    aby = by - ay
    den = abx * abx + aby * aby
    t = 0.0
    if den > 0.0:
        t = ((px - ax) * abx + (py - ay) * aby) / den
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
    cx = ax + t * abx
    cy = ay + t * aby
    return np.hypot(px - cx, py - cy)


@njit
def _cross_nb(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


@njit
def _seg_seg_nb(ax, ay, bx, by, cx, cy, dx, dy):
    o1 = _cross_nb(ax, ay, bx, by, cx, cy)
    o2 = _cross_nb(ax, ay, bx, by, dx, dy)
    o3 = _cross_nb(cx, cy, dx, dy, ax, ay)
    o4 = _cross_nb(cx, cy, dx, dy, bx, by)
    if o1 * o2 < 0.0 and o3 * o4 < 0.0:
        return 0.0
    d = _pt_seg_nb(cx, cy, ax, ay, bx, by)
    d = min(d, _pt_seg_nb(dx, dy, ax, ay, bx, by))
    d = min(d, _pt_seg_nb(ax, ay, cx, cy, dx, dy))
    d = min(d, _pt_seg_nb(bx, by, cx, cy, dx, dy))
    return d


@njit
def _min_vertex_vertex_nb(coords):
    n = coords.shape[0]
    best = np.inf
    ba = -1
    bb = -1
    for a in range(n):
        for b in range(a + 1, n):
            d = np.hypot(coords[a, 0] - coords[b, 0], coords[a, 1] - coords[b, 1])
            if d < best:
                best = d
                ba = a
                bb = b
    return best, ba, bb


@njit
def _min_vertex_edge_nb(coords, edges):
    n = coords.shape[0]
    m = edges.shape[0]
    best = np.inf
    bv = -1
    be = -1
    for v in range(n):
        for e in range(m):
            i = edges[e, 0]
            j = edges[e, 1]
            if i == v or j == v:
                continue
            d = _pt_seg_nb(coords[v, 0], coords[v, 1], coords[i, 0], coords[i, 1], coords[j, 0], coords[j, 1])
            if d < best:
                best = d
                bv = v
                be = e
    return best, bv, be


@njit
def _min_edge_edge_nb(coords, edges):
    m = edges.shape[0]
    best = np.inf
    bp = -1
    bq = -1
    for p in range(m):
        a = edges[p, 0]
        b = edges[p, 1]
        for q in range(p + 1, m):
            c = edges[q, 0]
            d = edges[q, 1]
            if a == c or a == d or b == c or b == d:
                continue
            s = _seg_seg_nb(
                coords[a, 0], coords[a, 1], coords[b, 0], coords[b, 1],
                coords[c, 0], coords[c, 1], coords[d, 0], coords[d, 1],
            )
            if s < best:
                best = s
                bp = p
                bq = q
    return best, bp, bq


@njit
def _min_adjacent_angle_nb(coords, edges):
    m = edges.shape[0]
    best = np.inf
    bp = -1
    bq = -1
    for p in range(m):
        a = edges[p, 0]
        b = edges[p, 1]
        for q in range(p + 1, m):
            c = edges[q, 0]
            d = edges[q, 1]
            if a == c or a == d:
                pivot = a
                fp = b
            elif b == c or b == d:
                pivot = b
                fp = a
            else:
                continue
            fq = d if c == pivot else c
            ux = coords[fp, 0] - coords[pivot, 0]
            uy = coords[fp, 1] - coords[pivot, 1]
            wx = coords[fq, 0] - coords[pivot, 0]
            wy = coords[fq, 1] - coords[pivot, 1]
            ang = abs(np.arctan2(ux * wy - uy * wx, ux * wx + uy * wy))
            if ang < best:
                best = ang
                bp = p
                bq = q
    return best, bp, bq


# --------------------------------------------------------------------------
# dispatch
# --------------------------------------------------------------------------

def _prep(coords, edges):
    c = np.ascontiguousarray(coords, dtype=np.float64).reshape(-1, 2)
    e = np.ascontiguousarray(edges, dtype=np.int64).reshape(-1, 2)
    return c, e


def constraint_matrix(coords, edges, factor=1.0, use_numba=None):
    """Dense |E| x 2|V| matrix with ``factor*(p_i - p_j)`` blocks per edge row."""
    c, e = _prep(coords, edges)
    fast = USE_NUMBA if use_numba is None else use_numba
    if fast and NUMBA_AVAILABLE:
        return _constraint_matrix_nb(c, e, float(factor))
    return _constraint_matrix_np(c, e, float(factor))


def _dispatch(nb, np_, args, use_numba):
    fast = USE_NUMBA if use_numba is None else use_numba
    if fast and NUMBA_AVAILABLE:
        d, a, b = nb(*args)
    else:
        d, a, b = np_(*args)
    return float(d), int(a), int(b)


def min_vertex_vertex(coords, use_numba=None):
    """(distance, a, b) for the closest vertex pair, a < b."""
    c, _ = _prep(coords, np.empty((0, 2)))
    return _dispatch(_min_vertex_vertex_nb, _min_vertex_vertex_np, (c,), use_numba)


def min_vertex_edge(coords, edges, use_numba=None):
    """(distance, vertex, edge) over vertices not incident to the edge."""
    return _dispatch(_min_vertex_edge_nb, _min_vertex_edge_np, _prep(coords, edges), use_numba)


def min_edge_edge(coords, edges, use_numba=None):
    """(distance, edge_p, edge_q) over edge pairs sharing no endpoint."""
    return _dispatch(_min_edge_edge_nb, _min_edge_edge_np, _prep(coords, edges), use_numba)


def min_adjacent_angle(coords, edges, use_numba=None):
    """(angle in radians, edge_p, edge_q) over edge pairs sharing an endpoint."""
    return _dispatch(_min_adjacent_angle_nb, _min_adjacent_angle_np, _prep(coords, edges), use_numba)


def segment_distance(a, b, c, d):
    """Closed-segment distance between ``ab`` and ``cd`` (scalar helper)."""
    a, b, c, d = (np.asarray(x, dtype=float) for x in (a, b, c, d))
    return float(_segment_segment_np(a[None], b[None], c[None], d[None])[0])
