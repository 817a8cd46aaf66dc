import numpy as np
import pytest
import sympy

from mgk.errors import DegenerateFramework
from mgk.model import build_graph
from mgk.refine import residuals
from mgk.rigidity import analyze_rigidity, numeric_rank, rigidity_matrix, trivial_motions

from conftest import double_triangle, rhombus, rotation, triangle


def exact_rank(g):
    """Oracle: rank of the rigidity matrix over the rationals."""
    rows = []
    pts = [tuple(sympy.nsimplify(v, rational=True) for v in p) for p in g.coords.tolist()]
    for i, j in g.edges.tolist():
        row = [0] * (2 * g.n_vertices)
        dx, dy = pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]
        row[2 * i], row[2 * i + 1], row[2 * j], row[2 * j + 1] = dx, dy, -dx, -dy
        rows.append(row)
    return sympy.Matrix(rows).rank()


def test_single_edge_row():
    g = build_graph([(0, 0), (1, 0)], [(0, 1)])
    assert rigidity_matrix(g).tolist() == [[-1.0, 0.0, 1.0, 0.0]]
    h = build_graph([(1, 0), (0, 0)], [(0, 1)])
    assert rigidity_matrix(h).tolist() == [[1.0, 0.0, -1.0, 0.0]]


def test_triangle_rank():
    assert numeric_rank(rigidity_matrix(triangle())) == 3


def test_rhombus_rank_matches_exact():
    assert exact_rank(rhombus()) == 4
    assert numeric_rank(rigidity_matrix(rhombus())) == 4


def test_numeric_rank_basics():
    assert numeric_rank(np.zeros((4, 6))) == 0
    assert numeric_rank(np.eye(5)) == 5
    assert numeric_rank(np.zeros((0, 3))) == 0


def test_numeric_rank_scale_invariant():
    m = np.random.default_rng(0).normal(size=(6, 4)) @ np.diag([1, 1, 1, 0]) @ np.eye(4)
    assert numeric_rank(m) == 3
    assert numeric_rank(1e-9 * m) == 3
    assert numeric_rank(1e9 * m) == 3


def test_fig2_rank(corpus_refined):
    assert numeric_rank(rigidity_matrix(corpus_refined["fig02/0"])) == 2 * 64 - 3


@pytest.mark.parametrize(
    "make, dof, rank",
    [(triangle, 0, 3), (rhombus, 1, 4), (double_triangle, 0, 5)],
)
def test_small_frameworks(make, dof, rank):
    rep = analyze_rigidity(make())
    assert rep.internal_dof == dof
    assert rep.rank == rank
    assert rep.classification == ("rigid" if dof == 0 else "flexible")
    assert rep.flex_basis.shape == (dof, 2 * make().n_vertices)


def _check_flex_basis(g, rep):
    R = rigidity_matrix(g)
    T = trivial_motions(g.coords)
    for u in rep.flex_basis:
        assert np.linalg.norm(R @ u) <= 1e-8 * np.linalg.norm(u)
        assert np.max(np.abs(T.T @ u)) <= 1e-8
        # first-order length preservation: perturbation changes lengths by O(delta^2)
        delta = 1e-6
        moved = g.with_coords(g.coords + delta * u.reshape(-1, 2))
        assert np.max(np.abs(moved.edge_lengths() - g.edge_lengths())) <= 1e-10


def test_rhombus_flex():
    g = rhombus()
    rep = analyze_rigidity(g)
    _check_flex_basis(g, rep)


def test_multi_dof_flex_basis():
    # pentagon: 2*5 - 3 - 5 = 2 internal dof
    ang = np.linspace(0, 2 * np.pi, 6)[:-1]
    pts = np.c_[np.cos(ang), np.sin(ang)] / (2 * np.sin(np.pi / 5))
    g = build_graph(pts, [(k, (k + 1) % 5) for k in range(5)])
    rep = analyze_rigidity(g)
    assert rep.internal_dof == 2
    _check_flex_basis(g, rep)
    q, _ = np.linalg.qr(rep.flex_basis.T)
    assert np.linalg.matrix_rank(q) == 2


def test_degenerate_frameworks():
    with pytest.raises(DegenerateFramework):
        analyze_rigidity(build_graph([(0, 0), (1, 0)], [(0, 1)]))
    with pytest.raises(DegenerateFramework):
        analyze_rigidity(build_graph([(0, 0), (1, 0), (2, 0)], [(0, 1), (1, 2)]))


def test_rank_bounds_and_dof_identity():
    rng = np.random.default_rng(4)
    for _ in range(20):
        n = int(rng.integers(3, 10))
        pts = rng.uniform(-3, 3, (n, 2))
        pairs = sorted({tuple(sorted(rng.choice(n, 2, replace=False))) for _ in range(int(rng.integers(1, 3 * n)))})
        g = build_graph(pts, pairs)
        rep = analyze_rigidity(g)
        assert rep.rank <= min(g.n_edges, 2 * n - 3)
        assert rep.internal_dof == 2 * n - 3 - rep.rank
        assert len(rep.flex_basis) == rep.internal_dof


def test_dof_invariant_under_isometry_and_relabel(corpus_refined):
    g = corpus_refined["fig10/0"]
    base = analyze_rigidity(g).internal_dof
    h = g.transformed(rotation(1.3, True), (4, 4)).relabeled(np.random.default_rng(2).permutation(g.n_vertices))
    assert analyze_rigidity(h).internal_dof == base


def test_corpus_all_rigid(corpus_refined):
    for ident, g in corpus_refined.items():
        assert np.max(np.abs(residuals(g))) <= 1e-9
        rep = analyze_rigidity(g)
        assert rep.internal_dof == 0, ident
        assert rep.rank == 2 * g.n_vertices - 3, ident
