"""Matchstick checks: unit lengths, clearances, degree class, connectivity."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import WrongClass
from .model import Graph, RegularityClass, classify_regularity, degree_sequence, is_connected

PRE_REFINE_LENGTH_TOLERANCE = 1e-3


@dataclass(frozen=True)
class VerificationPolicy:
    length_tolerance: float = 1e-9
    separation_delta: float = 1e-6
    require_connected: bool = True

    def __post_init__(self):
        if not 0 < self.length_tolerance < 0.5:
            raise ValueError("length_tolerance must lie in (0, 0.5)")
        if not 0 < self.separation_delta < 0.1:
            raise ValueError("separation_delta must lie in (0, 0.1)")

    @classmethod
    def pre_refine(cls, **kw) -> "VerificationPolicy":
        """Policy for raw figure coordinates (4-decimal rounding noise)."""
        return cls(length_tolerance=PRE_REFINE_LENGTH_TOLERANCE, **kw)


@dataclass(frozen=True)
class Separation:
    """Clearances between features that are not supposed to touch.

    ``edge_edge`` pairs share no endpoint, ``vertex_edge`` pairs are
    non-incident, ``adjacent_angle`` is the smallest angle (radians)
    between two edges meeting at a vertex. ``worst_*`` hold the indices
    realizing each minimum, ``(-1, -1)`` when no such pair exists.
    """

    edge_edge: float
    vertex_edge: float
    vertex_vertex: float
    adjacent_angle: float
    worst_edge_edge: tuple[int, int]
    worst_vertex_edge: tuple[int, int]
    worst_vertex_vertex: tuple[int, int]
    worst_adjacent_angle: tuple[int, int]

    @property
    def minimum(self) -> float:
        return min(self.edge_edge, self.vertex_edge, self.vertex_vertex)


@dataclass(frozen=True)
class VerificationReport:
    max_length_deviation: float
    worst_edge: int
    min_nonadjacent_separation: float
    separation: Separation
    regularity: RegularityClass
    connected: bool
    passed: bool
    reasons: tuple[str, ...] = field(default=())

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


def check_unit_lengths(g: Graph, tol: float | None = None) -> tuple[float, int]:
    """``(max | |p_i - p_j| - 1 |, index of that edge)``; ``(0.0, -1)`` without edges.

    ``tol`` is accepted for symmetry with the other checks; compare the
    deviation against it to get the verdict.
    """
    if g.n_edges == 0:
        return 0.0, -1
    dev = np.abs(g.edge_lengths() - 1.0)
    k = int(np.argmax(dev))
    return float(dev[k]), k


def check_separation(g: Graph, delta: float | None = None) -> Separation:
    ee, p, q = kernels.min_edge_edge(g.coords, g.edges)
    ve, v, e = kernels.min_vertex_edge(g.coords, g.edges)
    vv, a, b = kernels.min_vertex_vertex(g.coords)
    ang, s, t = kernels.min_adjacent_angle(g.coords, g.edges)
    return Separation(ee, ve, vv, ang, (p, q), (v, e), (a, b), (s, t))


def separation_ok(sep: Separation, delta: float) -> bool:
    return sep.minimum >= delta and sep.adjacent_angle >= delta


def verify_matchstick(g: Graph, policy: VerificationPolicy | None = None) -> VerificationReport:
    policy = policy or VerificationPolicy()
    reasons = []

    dev, worst = check_unit_lengths(g)
    if g.n_edges == 0:
        reasons.append("graph has no edges")
    elif dev > policy.length_tolerance:
        i, j = g.edges[worst]
        reasons.append(f"edge {worst} ({i}-{j}) deviates from unit length by {dev:.3g}")

    sep = check_separation(g)
    if sep.edge_edge < policy.separation_delta:
        p, q = sep.worst_edge_edge
        reasons.append(f"edges {p} and {q} are {sep.edge_edge:.3g} apart")
    if sep.vertex_edge < policy.separation_delta:
        v, e = sep.worst_vertex_edge
        reasons.append(f"vertex {v} is {sep.vertex_edge:.3g} from non-incident edge {e}")
    if sep.vertex_vertex < policy.separation_delta:
        a, b = sep.worst_vertex_vertex
        reasons.append(f"vertices {a} and {b} are {sep.vertex_vertex:.3g} apart")
    if sep.adjacent_angle < policy.separation_delta:
        s, t = sep.worst_adjacent_angle
        reasons.append(f"edges {s} and {t} overlap at their shared vertex")

    reg = classify_regularity(g)
    if not reg.is_matchstick_class:
        reasons.append(f"degree class {reg} is neither 4-regular nor (2,4)-regular")

    connected = is_connected(g)
    if policy.require_connected and not connected:
        reasons.append("graph is not connected")

    return VerificationReport(
        max_length_deviation=dev,
        worst_edge=worst,
        min_nonadjacent_separation=sep.minimum,
        separation=sep,
        regularity=reg,
        connected=connected,
        passed=not reasons,
        reasons=tuple(reasons),
    )


def degree2_distance(g: Graph) -> float:
    """Distance between the two degree-2 vertices of a (2,4)-regular graph."""
    deg = np.asarray(degree_sequence(g))
    ends = np.flatnonzero(deg == 2)
    reg = classify_regularity(g)
    if len(ends) != 2 or not reg.is_matchstick_class:
        raise WrongClass(f"need exactly two degree-2 vertices in a (2,4)-regular graph, got class {reg}")
    a, b = g.coords[ends[0]], g.coords[ends[1]]
    return float(np.hypot(*(a - b)))
