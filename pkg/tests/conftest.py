import math
from pathlib import Path

import numpy as np
import pytest

from mgk.catalog import default_corpus
from mgk.ingest import ingest_text
from mgk.model import build_graph, connected_components
from mgk.refine import refine

CORPUS = Path(__file__).resolve().parents[1] / "src" / "mgk" / "corpus"
PART_II_FIGURES = ("fig09", "fig10", "fig11", "fig13", "fig15", "fig16")
SQ3 = math.sqrt(3.0)


def corpus_text(stem: str) -> str:
    return (CORPUS / f"{stem}.tikz").read_text()


def triangle(side=1.0):
    return build_graph([(0, 0), (side, 0), (side / 2, side * SQ3 / 2)], [(0, 1), (1, 2), (0, 2)])


def rhombus():
    # unit rhombus with rational coordinates (3-4-5 direction)
    return build_graph([(0, 0), (1, 0), (1.6, 0.8), (0.6, 0.8)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def double_triangle():
    pts = [(0, 0), (1, 0), (0.5, SQ3 / 2), (0.5, -SQ3 / 2)]
    return build_graph(pts, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])


def rotation(theta, reflect=False):
    c, s = math.cos(theta), math.sin(theta)
    r = np.array([[c, -s], [s, c]])
    return r @ np.diag([1.0, -1.0]) if reflect else r


@pytest.fixture(scope="session")
def corpus_components():
    """{'fig09/0': normalized component graph, ...} in discovery order."""
    out = {}
    for path in sorted(CORPUS.glob("*.tikz")):
        g = ingest_text(path.read_text())
        for k, c in enumerate(connected_components(g)):
            out[f"{path.stem}/{k}"] = c
    return out


@pytest.fixture(scope="session")
def corpus_refined(corpus_components):
    return {k: refine(g)[0] for k, g in corpus_components.items()}


@pytest.fixture(scope="session")
def corpus_dir():
    return default_corpus()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
