import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mgk import kernels
from mgk.kernels import segment_distance

needs_numba = pytest.mark.skipif(not kernels.NUMBA_AVAILABLE, reason="numba not installed or disabled")


def sampled_segment_distance(a, b, c, d, k=801):
    """Brute-force oracle: dense sampling of both segments."""
    t = np.linspace(0.0, 1.0, k)
    p = np.asarray(a) + t[:, None] * (np.asarray(b) - np.asarray(a))
    q = np.asarray(c) + t[:, None] * (np.asarray(d) - np.asarray(c))
    diff = p[:, None, :] - q[None, :, :]
    return float(np.min(np.hypot(diff[..., 0], diff[..., 1])))


def test_crossing_segments_distance_zero():
    assert segment_distance((0, 0), (1, 1), (0, 1), (1, 0)) == 0.0


def test_touching_endpoint_on_interior():
    assert segment_distance((0, 0), (2, 0), (1, 0), (1, 1)) == 0.0


def test_collinear_disjoint():
    assert segment_distance((0, 0), (1, 0), (2, 0), (3, 0)) == pytest.approx(1.0)


def test_parallel_offset():
    assert segment_distance((0, 0), (1, 0), (0.2, 0.5), (0.8, 0.5)) == pytest.approx(0.5)


coord = st.floats(-3, 3, allow_nan=False)
pt = st.tuples(coord, coord)


@settings(max_examples=150, deadline=None)
@given(pt, pt, pt, pt)
def test_segment_distance_matches_sampling(a, b, c, d):
    exact = segment_distance(a, b, c, d)
    sampled = sampled_segment_distance(a, b, c, d)
    # sampling can only overestimate, by at most half a sample step per segment
    step = (np.hypot(*np.subtract(b, a)) + np.hypot(*np.subtract(d, c))) / 800
    assert exact <= sampled + 1e-12
    assert sampled - exact <= step + 1e-9


def _random_framework(rng, n=30, m=60):
    coords = rng.uniform(-4, 4, size=(n, 2))
    pairs = set()
    while len(pairs) < m:
        i, j = sorted(rng.choice(n, 2, replace=False))
        pairs.add((int(i), int(j)))
    return coords, np.array(sorted(pairs))


def _brute_edge_edge(coords, edges):
    best = (np.inf, -1, -1)
    for p in range(len(edges)):
        for q in range(p + 1, len(edges)):
            if set(edges[p]) & set(edges[q]):
                continue
            d = segment_distance(*coords[edges[p]], *coords[edges[q]])
            if d < best[0]:
                best = (d, p, q)
    return best


@pytest.mark.parametrize("use_numba", [False, pytest.param(True, marks=needs_numba)])
def test_edge_edge_against_brute_force(use_numba):
    rng = np.random.default_rng(3)
    coords, edges = _random_framework(rng, 12, 14)
    # spread out so nothing crosses and the minimum is unique
    coords = coords * 3
    got = kernels.min_edge_edge(coords, edges, use_numba=use_numba)
    want = _brute_edge_edge(coords, edges)
    assert got[0] == pytest.approx(want[0], abs=1e-12)
    if want[0] > 0:
        assert got[1:] == want[1:]


@needs_numba
@pytest.mark.parametrize("seed", range(5))
def test_numba_and_numpy_agree(seed):
    rng = np.random.default_rng(seed)
    coords, edges = _random_framework(rng)
    for fn in (kernels.min_edge_edge, kernels.min_vertex_edge, kernels.min_adjacent_angle):
        a = fn(coords, edges, use_numba=True)
        b = fn(coords, edges, use_numba=False)
        assert a[0] == pytest.approx(b[0], abs=1e-14)
        if a[0] > 0:
            assert a[1:] == b[1:]
    a = kernels.min_vertex_vertex(coords, use_numba=True)
    b = kernels.min_vertex_vertex(coords, use_numba=False)
    assert a == pytest.approx(b)
    assert np.array_equal(
        kernels.constraint_matrix(coords, edges, 2.0, use_numba=True),
        kernels.constraint_matrix(coords, edges, 2.0, use_numba=False),
    )


def test_empty_inputs():
    c = np.zeros((1, 2))
    e = np.zeros((0, 2), dtype=int)
    assert kernels.min_vertex_vertex(c)[0] == np.inf
    assert kernels.min_edge_edge(c, e)[0] == np.inf
    assert kernels.min_vertex_edge(c, e)[0] == np.inf
    assert kernels.min_adjacent_angle(c, e)[0] == np.inf
    assert kernels.constraint_matrix(c, e).shape == (0, 2)
