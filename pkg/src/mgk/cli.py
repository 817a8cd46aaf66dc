"""``mgk`` command line.

Exit codes: 0 success, 1 clean negative result (verification failed, no
convergence, unexpected rigidity class, catalog with failures),
2 operational error (unreadable or malformed input, unwritable output).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .catalog import build_catalog, default_corpus, load_graph, source_files
from .congruence import dedup
from .errors import DidNotConverge, MgkError
from .ingest import IngestOptions
from .mgf import write_mgf
from .model import connected_components
from .refine import RefineOptions, refine
from .render import render_svg
from .report import dumps, refinement_record, rigidity_record, verification_record
from .rigidity import analyze_rigidity
from .verify import VerificationPolicy, verify_matchstick

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class _Fail(Exception):
    """Operational error: message to stderr, exit 2."""


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise _Fail(f"cannot read {path}: {exc}") from exc


def _write(path: str | Path, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _Fail(f"cannot write {path}: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        _write(out, text)
    else:
        sys.stdout.write(text)


def _load(path: str, fmt: str | None = None, merge_tol: float | None = None):
    opts = IngestOptions(merge_tolerance=merge_tol) if merge_tol else None
    try:
        return load_graph(_read(path), fmt, opts)
    except MgkError as exc:
        raise _Fail(f"{path}: {exc}") from exc


def _policy(args) -> VerificationPolicy:
    try:
        return VerificationPolicy(args.tol, args.delta, not args.allow_disconnected)
    except ValueError as exc:
        raise _Fail(str(exc)) from exc


# --------------------------------------------------------------------------

def cmd_parse(args) -> int:
    text = _read(args.input)
    fmt = args.format or ("mgf" if args.input.endswith(".mgf") else "tikz")
    try:
        g = load_graph(text, fmt, IngestOptions(merge_tolerance=args.merge_tol))
    except MgkError as exc:
        raise _Fail(f"{args.input}: {exc}") from exc
    comps = connected_components(g)
    outdir = Path(args.out or ".")
    if not outdir.is_dir():
        raise _Fail(f"output directory {outdir} does not exist")
    stem = Path(args.input).stem
    written = []
    for k, c in enumerate(comps):
        path = outdir / f"{stem}-{k}.mgf"
        _write(path, write_mgf(c, [f"source {Path(args.input).name} component {k}"]))
        written.append({"file": str(path), "vertices": c.n_vertices, "edges": c.n_edges})
    if args.json:
        sys.stdout.write(dumps({"components": written}))
    else:
        print(f"{len(comps)} component(s)")
        for k, w in enumerate(written):
            print(f"  {k}: {w['vertices']} vertices, {w['edges']} edges -> {w['file']}")
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load(args.input)
    rep = verify_matchstick(g, _policy(args))
    record = {"input": args.input, "vertices": g.n_vertices, "edges": g.n_edges, **verification_record(rep)}
    _emit(dumps(record), args.out)
    return EXIT_OK if rep.passed else EXIT_NEGATIVE


def cmd_refine(args) -> int:
    g = _load(args.input)
    try:
        opts = RefineOptions(max_iterations=args.max_iter, residual_target=args.target)
    except ValueError as exc:
        raise _Fail(str(exc)) from exc
    try:
        refined, trace = refine(g, opts, check=False)
    except DidNotConverge as exc:  # pragma: no cover - check=False never raises it
        raise _Fail(str(exc)) from exc
    except MgkError as exc:
        raise _Fail(f"{args.input}: {exc}") from exc
    mgf_out = args.mgf_out or str(Path(args.input).with_name(Path(args.input).stem + "-refined.mgf"))
    _write(mgf_out, write_mgf(refined))
    _emit(dumps({"input": args.input, "output": mgf_out, **refinement_record(trace)}), args.out)
    return EXIT_OK if trace.converged else EXIT_NEGATIVE


def cmd_rigidity(args) -> int:
    g = _load(args.input)
    try:
        rep = analyze_rigidity(g, args.rank_tol)
    except MgkError as exc:
        raise _Fail(f"{args.input}: {exc}") from exc
    record = {"input": args.input, **rigidity_record(rep, with_basis=args.basis)}
    _emit(dumps(record), args.out)
    if args.flex_mgf:
        comments = [f"flex {k} " + " ".join(f"{x:.17g}" for x in u) for k, u in enumerate(rep.flex_basis)]
        _write(args.flex_mgf, write_mgf(g, comments))
    if args.expect and args.expect != rep.classification:
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_dedup(args) -> int:
    graphs = [(p, _load(p)) for p in args.inputs]
    classes = dedup(graphs, args.tol, key=lambda t: t)
    record = {
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
                        "vertex_mapping": r.vertex_mapping,
                    }
                    for m, r in c.alignments.items()
                },
            }
            for c in classes
        ]
    }
    _emit(dumps(record), args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    g = _load(args.input)
    try:
        svg = render_svg(g, args.ppu, args.label_degrees)
    except (MgkError, ValueError) as exc:
        raise _Fail(f"{args.input}: {exc}") from exc
    out = args.out or str(Path(args.input).with_suffix(".svg"))
    _write(out, svg)
    if args.json:
        sys.stdout.write(dumps({"output": out, "lines": g.n_edges}))
    return EXIT_OK


def cmd_catalog(args) -> int:
    directory = Path(args.corpus) if args.corpus else default_corpus()
    if not directory.is_dir():
        raise _Fail(f"corpus directory {directory} does not exist")
    summary = build_catalog(
        source_files(directory),
        IngestOptions(merge_tolerance=args.merge_tol),
        policy=_policy(args),
    )
    if args.out:
        _write(args.out, dumps(summary.to_dict()))
    if args.json:
        sys.stdout.write(dumps(summary.to_dict()))
    else:
        sys.stdout.write(summary.format_table())
    return EXIT_OK if summary.ok else EXIT_NEGATIVE


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mgk", description="Matchstick graph toolkit.")
    p.add_argument("--version", action="version", version=f"mgk {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out_help="write the report here instead of standard output"):
        sp.add_argument("--out", help=out_help)
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    def tolerances(sp):
        sp.add_argument("--tol", type=float, default=1e-9, help="edge length tolerance (default 1e-9)")
        sp.add_argument("--delta", type=float, default=1e-6, help="minimum clearance (default 1e-6)")
        sp.add_argument("--allow-disconnected", action="store_true")

    sp = sub.add_parser("parse", help="figure source -> one MGF per connected component")
    sp.add_argument("input")
    sp.add_argument("--format", choices=("tikz", "mgf"))
    sp.add_argument("--merge-tol", type=float, default=0.01, help="endpoint merge radius, raw units")
    common(sp, "output directory (default: current directory)")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("verify", help="check the matchstick property")
    sp.add_argument("input")
    tolerances(sp)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("refine", help="drive edge lengths to 1")
    sp.add_argument("input")
    sp.add_argument("--max-iter", type=int, default=200)
    sp.add_argument("--target", type=float, default=1e-12, help="max |len^2 - 1| to reach")
    sp.add_argument("--mgf-out", help="refined MGF path (default: <stem>-refined.mgf)")
    common(sp)
    sp.set_defaults(func=cmd_refine)

    sp = sub.add_parser("rigidity", help="infinitesimal rigidity report")
    sp.add_argument("input")
    sp.add_argument("--rank-tol", type=float, default=1e-8)
    sp.add_argument("--expect", choices=("rigid", "flexible"))
    sp.add_argument("--basis", action="store_true", help="include the flex basis in the report")
    sp.add_argument("--flex-mgf", help="write the graph with flex vectors as comment lines")
    common(sp)
    sp.set_defaults(func=cmd_rigidity)

    sp = sub.add_parser("dedup", help="group congruent graphs")
    sp.add_argument("inputs", nargs="+")
    sp.add_argument("--tol", type=float, default=1e-6)
    common(sp)
    sp.set_defaults(func=cmd_dedup)

    sp = sub.add_parser("render", help="draw as SVG")
    sp.add_argument("input")
    sp.add_argument("--ppu", type=float, default=40.0, help="pixels per unit edge")
    sp.add_argument("--label-degrees", action="store_true")
    common(sp, "SVG path (default: <input>.svg)")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("catalog", help="run the full pipeline over a corpus directory")
    sp.add_argument("corpus", nargs="?", help="directory (default: $MGK_CORPUS or the bundled corpus)")
    sp.add_argument("--merge-tol", type=float, default=0.01)
    tolerances(sp)
    common(sp, "also write the JSON summary here")
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"mgk {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
