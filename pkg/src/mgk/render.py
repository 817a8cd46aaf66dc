"""SVG 1.1 drawing of a graph.

Coordinates are taken in figure orientation (y grows downward, as in the
source drawings), which is also SVG's convention, so the picture comes out
the same way up as the original figures.
"""

from __future__ import annotations

from .errors import NoEdges
from .model import Graph, degree_sequence

STROKE = 0.03
MARGIN = 0.5
VERTEX_RADIUS = 0.06


def _n(v: float) -> str:
    s = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(g: Graph, ppu: float = 40.0, label_degrees: bool = False) -> str:
    if g.n_edges == 0:
        raise NoEdges("nothing to draw: graph has no edges")
    if not ppu > 0:
        raise ValueError("pixels-per-unit must be positive")
    lo = g.coords.min(axis=0) - MARGIN
    hi = g.coords.max(axis=0) + MARGIN
    w, h = (hi - lo) * ppu

    def px(p):
        return (p[0] - lo[0]) * ppu, (p[1] - lo[1]) * ppu

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_n(w)}" height="{_n(h)}" '
        f'viewBox="0 0 {_n(w)} {_n(h)}">',
        f'<g stroke="black" stroke-width="{_n(STROKE * ppu)}" stroke-linecap="round" fill="none">',
    ]
    for i, j in g.edges.tolist():
        x1, y1 = px(g.coords[i])
        x2, y2 = px(g.coords[j])
        out.append(f'<line x1="{_n(x1)}" y1="{_n(y1)}" x2="{_n(x2)}" y2="{_n(y2)}"/>')
    out.append("</g>")
    if label_degrees:
        out.append('<g stroke="none">')
        for v, d in enumerate(degree_sequence(g)):
            colour = "#d62728" if d == 2 else "#1f77b4"
            cx, cy = px(g.coords[v])
            out.append(
                f'<circle cx="{_n(cx)}" cy="{_n(cy)}" r="{_n(VERTEX_RADIUS * ppu)}" fill="{colour}" '
                f'class="deg{d}"/>'
            )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
