"""Whole-corpus pipeline and the comparison with the published counts.

Each source file is ingested, split into components and every component
goes through refine -> verify -> rigidity -> degree-2 distance. Entries
are then deduplicated and tallied by vertex count next to the published
example counts. Vertex counts for which no figure data is available are
reported as ``not embedded``.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .congruence import EquivalenceClass, dedup
from .errors import MgkError
from .ingest import IngestOptions, ingest_text
from .mgf import HEADER, read_mgf
from .model import Graph, Regularity, connected_components
from .refine import RefinementTrace, RefineOptions, refine
from .rigidity import RigidityReport, analyze_rigidity
from .verify import VerificationPolicy, VerificationReport, degree2_distance, verify_matchstick

# published example counts by vertex count
FOUR_REGULAR_COUNTS = {63: 3, 64: 1, 65: 3, 66: 9, 67: 11, 68: 4, 69: 3, 70: 5}
TWO_FOUR_REGULAR_COUNTS = {22: 2, 30: 3, 31: 1, 34: 6, 35: 3, 36: 8, 37: 3, 38: 2, 39: 4, 40: 14, 41: 20}

# figure number -> vertex count named in its caption
FIGURE_VERTICES = {
    1: 63, 2: 64, 3: 65, 4: 66, 5: 67, 6: 68, 7: 69, 8: 70,
    9: 22, 10: 30, 11: 31, 12: 34, 13: 35, 14: 36, 15: 37, 16: 38, 17: 39,
    18: 40, 19: 40, 20: 41, 21: 41, 22: 41, 23: 41,
}

_FIG_RE = re.compile(r"fig0*(\d+)", re.IGNORECASE)
SOURCE_SUFFIXES = (".tikz", ".tex", ".txt", ".mgf")


def default_corpus() -> Path:
    env = os.environ.get("MGK_CORPUS")
    if env:
        return Path(env)
    return Path(str(resources.files("mgk") / "corpus"))


@dataclass
class CatalogEntry:
    id: str
    graph: Graph
    verification: VerificationReport
    rigidity: RigidityReport
    refinement: RefinementTrace
    degree2_distance: float | None
    figure: int | None = None
    caption_vertices: int | None = None

    def record(self) -> dict:
        v = self.verification
        return {
            "id": self.id,
            "vertices": self.graph.n_vertices,
            "edges": self.graph.n_edges,
            "regularity": str(v.regularity),
            "max_length_deviation": v.max_length_deviation,
            "min_separation": v.min_nonadjacent_separation,
            "connected": v.connected,
            "rank": self.rigidity.rank,
            "internal_dof": self.rigidity.internal_dof,
            "classification": self.rigidity.classification,
            "degree2_distance": self.degree2_distance,
            "refinement": {
                "iterations": self.refinement.iterations,
                "final_max_residual": self.refinement.final_max_residual,
                "converged": self.refinement.converged,
            },
        }


@dataclass
class Failure:
    source: str
    stage: str
    message: str


@dataclass
class TableRow:
    part: str
    vertices: int
    expected: int
    computed: int | None
    status: str  # "match", "mismatch" or "not embedded"


@dataclass
class CatalogSummary:
    entries: list[CatalogEntry] = field(default_factory=list)
    classes: list[EquivalenceClass] = field(default_factory=list)
    failures: list[Failure] = field(default_factory=list)
    discrepancies: list[str] = field(default_factory=list)
    covered_vertex_counts: set[int] = field(default_factory=set)

    @property
    def ok(self) -> bool:
        return not self.failures and all(e.verification.passed for e in self.entries)

    def tallies(self) -> dict[str, dict[int, int]]:
        """Distinct examples (dedup classes) by regularity kind and vertex count."""
        by_id = {e.id: e for e in self.entries}
        out: dict[str, dict[int, int]] = {}
        for cls in self.classes:
            e = by_id[cls.representative]
            kind = e.verification.regularity.kind.value
            n = e.graph.n_vertices
            out.setdefault(kind, {})
            out[kind][n] = out[kind].get(n, 0) + 1
        return {k: dict(sorted(v.items())) for k, v in sorted(out.items())}

    def table(self) -> list[TableRow]:
        t = self.tallies()
        rows = []
        for part, kind, expected in (
            ("I", Regularity.FOUR_REGULAR.value, FOUR_REGULAR_COUNTS),
            ("II", Regularity.TWO_FOUR_REGULAR.value, TWO_FOUR_REGULAR_COUNTS),
        ):
            got = t.get(kind, {})
            for n, want in expected.items():
                if n not in self.covered_vertex_counts and n not in got:
                    rows.append(TableRow(part, n, want, None, "not embedded"))
                    continue
                c = got.get(n, 0)
                rows.append(TableRow(part, n, want, c, "match" if c == want else "mismatch"))
        return rows

    def to_dict(self) -> dict:
        return {
            "graphs": [e.record() for e in self.entries],
            "classes": [
                {
                    "representative": c.representative,
                    "members": list(c.members),
                    "alignments": {
                        m: {
                            "reflection": r.isometry.reflection,
                            "angle": r.isometry.angle,
                            "translation": list(r.isometry.translation),
                            "max_alignment_error": r.max_alignment_error,
                        }
                        for m, r in c.alignments.items()
                    },
                }
                for c in self.classes
            ],
            "tallies": {k: {str(n): c for n, c in v.items()} for k, v in self.tallies().items()},
            "table": [
                {
                    "part": r.part,
                    "vertices": r.vertices,
                    "expected": r.expected,
                    "computed": r.computed,
                    "status": r.status,
                }
                for r in self.table()
            ],
            "discrepancies": list(self.discrepancies),
            "failures": [{"source": f.source, "stage": f.stage, "message": f.message} for f in self.failures],
        }

    def format_table(self) -> str:
        lines = []
        rows = self.table()
        for part, title in (("I", "4-regular"), ("II", "(2,4)-regular, two vertices of degree 2")):
            sel = [r for r in rows if r.part == part]
            if not sel:
                continue
            lines.append(f"Part {part}: {title}")
            cells = [
                ["vertices"] + [str(r.vertices) for r in sel],
                ["published"] + [str(r.expected) for r in sel],
                ["computed"] + ["-" if r.computed is None else str(r.computed) for r in sel],
                ["status"] + [{"match": "ok", "mismatch": "DIFF", "not embedded": "n/e"}[r.status] for r in sel],
            ]
            widths = [max(len(row[k]) for row in cells) for k in range(len(cells[0]))]
            for row in cells:
                lines.append(" | ".join(c.rjust(w) for c, w in zip(row, widths)))
            lines.append("")
        lines.append("n/e = not embedded (no coordinate data available for that vertex count)")
        lines.append(f"graphs: {len(self.entries)}  distinct: {len(self.classes)}  failures: {len(self.failures)}")
        for d in self.discrepancies:
            lines.append(f"discrepancy: {d}")
        for f in self.failures:
            lines.append(f"failure: {f.source} [{f.stage}] {f.message}")
        return "\n".join(lines) + "\n"


def figure_number(path: str | Path) -> int | None:
    m = _FIG_RE.search(Path(path).stem)
    return int(m.group(1)) if m else None


def load_graph(text: str, fmt: str | None = None, opts: IngestOptions | None = None) -> Graph:
    """Normalized graph from MGF or figure text (format sniffed when ``fmt`` is None)."""
    if fmt is None:
        fmt = "mgf" if text.startswith(HEADER) else "tikz"
    if fmt == "mgf":
        return read_mgf(text)
    return ingest_text(text, opts)


def process_graph(
    ident: str,
    g: Graph,
    refine_opts: RefineOptions | None = None,
    policy: VerificationPolicy | None = None,
) -> CatalogEntry:
    refined, trace = refine(g, refine_opts)
    report = verify_matchstick(refined, policy)
    rig = analyze_rigidity(refined)
    d2 = None
    if report.regularity.kind is Regularity.TWO_FOUR_REGULAR and report.regularity.count2 == 2:
        d2 = degree2_distance(refined)
    return CatalogEntry(ident, refined, report, rig, trace, d2)


def source_files(directory: str | Path) -> list[Path]:
    d = Path(directory)
    return sorted(p for p in d.iterdir() if p.is_file() and p.suffix.lower() in SOURCE_SUFFIXES)


def build_catalog(
    paths: list[Path],
    ingest_opts: IngestOptions | None = None,
    refine_opts: RefineOptions | None = None,
    policy: VerificationPolicy | None = None,
) -> CatalogSummary:
    summary = CatalogSummary()
    for path in sorted(paths, key=lambda p: p.name):
        fig = figure_number(path)
        caption = FIGURE_VERTICES.get(fig) if fig is not None else None
        try:
            g = load_graph(path.read_text(encoding="utf-8"), opts=ingest_opts)
        except (MgkError, OSError, UnicodeDecodeError) as exc:
            summary.failures.append(Failure(path.name, "ingest", str(exc)))
            continue
        if caption is not None:
            summary.covered_vertex_counts.add(caption)
        for k, comp in enumerate(connected_components(g)):
            ident = f"{path.stem}/{k}"
            try:
                entry = process_graph(ident, comp, refine_opts, policy)
            except MgkError as exc:
                summary.failures.append(Failure(ident, type(exc).__name__, str(exc)))
                continue
            entry.figure, entry.caption_vertices = fig, caption
            if caption is not None and comp.n_vertices != caption:
                summary.discrepancies.append(
                    f"{ident} has {comp.n_vertices} vertices; its figure is captioned {caption}"
                )
                summary.covered_vertex_counts.add(comp.n_vertices)
            summary.entries.append(entry)
    summary.classes = dedup(summary.entries)
    return summary


def catalog_directory(directory: str | Path | None = None, **kw) -> CatalogSummary:
    return build_catalog(source_files(directory or default_corpus()), **kw)


__all__ = [
    "CatalogEntry",
    "CatalogSummary",
    "FIGURE_VERTICES",
    "FOUR_REGULAR_COUNTS",
    "TWO_FOUR_REGULAR_COUNTS",
    "build_catalog",
    "catalog_directory",
    "default_corpus",
    "load_graph",
    "process_graph",
]
