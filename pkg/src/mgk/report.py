"""JSON records for reports, written byte-for-byte reproducibly.

Floats are printed with 17 significant digits (always with a decimal
point or exponent so they read back as floats); non-finite values become
``null``. Key order is whatever order the record dict was built in.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .refine import RefinementTrace
from .rigidity import RigidityReport
from .verify import VerificationReport


def _float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    s = f"{x:.17g}"
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [f"{pad}{_encode(v, indent, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    return _encode(obj, indent, 0) + "\n"


def verification_record(rep: VerificationReport) -> dict:
    sep = rep.separation
    return {
        "regularity": str(rep.regularity),
        "max_length_deviation": rep.max_length_deviation,
        "min_separation": rep.min_nonadjacent_separation,
        "min_edge_edge": sep.edge_edge,
        "min_vertex_edge": sep.vertex_edge,
        "min_vertex_vertex": sep.vertex_vertex,
        "min_adjacent_angle": sep.adjacent_angle,
        "connected": rep.connected,
        "verdict": rep.verdict,
        "reasons": list(rep.reasons),
    }


def rigidity_record(rep: RigidityReport, with_basis: bool = False) -> dict:
    out = {
        "edge_count": rep.edge_count,
        "vertex_count": rep.vertex_count,
        "rank": rep.rank,
        "trivial_dim": rep.trivial_dim,
        "internal_dof": rep.internal_dof,
        "classification": rep.classification,
        "rank_tolerance_used": rep.rank_tolerance_used,
    }
    if with_basis:
        out["flex_basis"] = rep.flex_basis.tolist()
    return out


def refinement_record(trace: RefinementTrace) -> dict:
    return {
        "iterations": trace.iterations,
        "initial_max_residual": trace.initial_max_residual,
        "final_max_residual": trace.final_max_residual,
        "converged": trace.converged,
        "max_vertex_displacement": trace.max_vertex_displacement,
    }
