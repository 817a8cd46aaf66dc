"""Time the numba kernels against the pure-numpy versions.

    python3 benchmarks/bench_kernels.py [--repeat N]

Inputs are the refined corpus graphs plus a larger random drawing. The
first numba call compiles and is excluded from timing.
"""

import argparse
import timeit

import numpy as np

from mgk import kernels
from mgk.catalog import default_corpus
from mgk.ingest import ingest_text
from mgk.model import connected_components
from mgk.refine import refine

KERNELS = {
    "constraint_matrix": lambda g, nb: kernels.constraint_matrix(g.coords, g.edges, 2.0, use_numba=nb),
    "min_vertex_vertex": lambda g, nb: kernels.min_vertex_vertex(g.coords, use_numba=nb),
    "min_vertex_edge": lambda g, nb: kernels.min_vertex_edge(g.coords, g.edges, use_numba=nb),
    "min_edge_edge": lambda g, nb: kernels.min_edge_edge(g.coords, g.edges, use_numba=nb),
    "min_adjacent_angle": lambda g, nb: kernels.min_adjacent_angle(g.coords, g.edges, use_numba=nb),
}


def corpus_graphs():
    out = []
    for path in sorted(default_corpus().glob("*.tikz")):
        out += [refine(c)[0] for c in connected_components(ingest_text(path.read_text()))]
    return out


def random_graph(n, seed=0):
    from mgk.model import build_graph

    rng = np.random.default_rng(seed)
    pts = rng.uniform(0, np.sqrt(n) * 2, (n, 2))
    edges = {tuple(sorted(rng.choice(n, 2, replace=False))) for _ in range(2 * n)}
    return build_graph(pts, sorted(edges))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not kernels.NUMBA_AVAILABLE:
        print("numba not available (or MGK_NUMBA=0); only the numpy path can run")
    cases = {"corpus (15 graphs)": corpus_graphs(), "random n=400": [random_graph(400)]}
    print(f"{'kernel':<20} {'input':<20} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for name, fn in KERNELS.items():
        for label, graphs in cases.items():
            t_np = min(timeit.repeat(lambda: [fn(g, False) for g in graphs], number=1, repeat=args.repeat))
            if kernels.NUMBA_AVAILABLE:
                for g in graphs:
                    a, b = fn(g, True), fn(g, False)
                    a, b = (a, b) if isinstance(a, np.ndarray) else (a[0], b[0])
                    assert np.allclose(a, b, rtol=1e-12, atol=1e-15), name
                t_nb = min(timeit.repeat(lambda: [fn(g, True) for g in graphs], number=1, repeat=args.repeat))
                print(f"{name:<20} {label:<20} {1e3 * t_np:>10.2f} {1e3 * t_nb:>10.2f} {t_np / t_nb:>7.1f}x")
            else:
                print(f"{name:<20} {label:<20} {1e3 * t_np:>10.2f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
