"""Matchstick graph toolkit: ingest figure data, refine to unit edges,
verify, analyse rigidity and detect congruent duplicates."""

from .errors import MgkError
from .ingest import IngestOptions, Segment, estimate_scale, extract_segments, normalize, unify_endpoints
from .mgf import read_mgf, write_mgf
from .model import (
    Graph,
    Point2,
    RegularityClass,
    build_graph,
    classify_regularity,
    connected_components,
    degree_sequence,
)
from .refine import RefineOptions, RefinementTrace, jacobian, refine, residuals
from .rigidity import RigidityReport, analyze_rigidity, numeric_rank, rigidity_matrix
from .verify import VerificationPolicy, VerificationReport, degree2_distance, verify_matchstick
from .congruence import CongruenceResult, Fingerprint, dedup, fingerprint, is_congruent, is_isomorphic

__version__ = "0.1.0"
