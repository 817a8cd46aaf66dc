"""Damped Gauss-Newton (Levenberg-Marquardt) on squared edge lengths.

The residual of edge ``(i, j)`` is ``|p_i - p_j|^2 - 1``. No vertex is
pinned: the normal matrix is singular along rigid motions and the
``lambda * I`` term keeps the step well defined. Because ``J^T r`` has no
component along those motions, the iteration commutes with isometries.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve, LinAlgError

from .errors import DegenerateConfiguration, DidNotConverge, InfeasibleStart
from .kernels import constraint_matrix
from .model import Graph

LAMBDA_MIN = 1e-12
LAMBDA_MAX = 1e12
COLLAPSE_LENGTH = 1e-3


@dataclass(frozen=True)
class RefineOptions:
    max_iterations: int = 200
    residual_target: float = 1e-12
    initial_damping: float = 1e-3
    damping_factor: float = 10.0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")
        if not self.residual_target > 0:
            raise ValueError("residual_target must be positive")
        if not self.initial_damping > 0:
            raise ValueError("initial_damping must be positive")
        if not self.damping_factor > 1:
            raise ValueError("damping_factor must exceed 1")


@dataclass(frozen=True)
class RefinementTrace:
    iterations: int
    initial_max_residual: float
    final_max_residual: float
    converged: bool
    max_vertex_displacement: float
    accepted_steps: int = 0
    ssq_history: tuple[float, ...] = ()

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("ssq_history")
        return d


def residuals(g: Graph) -> np.ndarray:
    """Squared edge length minus one, in edge-list order."""
    return _residuals(g.coords, g.edges)


def _residuals(coords, edges):
    d = coords[edges[:, 0]] - coords[edges[:, 1]]
    return d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1] - 1.0


def jacobian(g: Graph) -> np.ndarray:
    """d residuals / d coords; columns are ``x0, y0, x1, y1, ...``."""
    return constraint_matrix(g.coords, g.edges, 2.0)


def refine(g: Graph, opts: RefineOptions | None = None, *, check: bool = True) -> tuple[Graph, RefinementTrace]:
    """Move vertices until every edge has unit length.

    Raises :class:`DidNotConverge` (with the trace attached) when ``check``
    is set and the target is not met; with ``check=False`` the best
    iterate is returned and ``trace.converged`` tells the story.
    """
    opts = opts or RefineOptions()
    edges = g.edges
    x0 = np.array(g.coords, dtype=float)
    x = x0.copy()
    r = _residuals(x, edges) if g.n_edges else np.zeros(0)
    start = float(np.max(np.abs(r), initial=0.0))
    if start >= 0.5:
        raise InfeasibleStart(f"initial max |len^2 - 1| = {start:.3g}; refine needs a near-unit drawing")

    ssq = float(r @ r)
    history = [ssq]
    lam = opts.initial_damping
    eye = np.eye(x.size)
    iterations = 0
    accepted = 0

    while float(np.max(np.abs(r), initial=0.0)) > opts.residual_target and iterations < opts.max_iterations:
        iterations += 1
        J = constraint_matrix(x, edges, 2.0)
        JtJ = J.T @ J
        grad = J.T @ r
        try:
            step = -cho_solve(cho_factor(JtJ + lam * eye, check_finite=False), grad, check_finite=False)
        except LinAlgError:
            lam = min(lam * opts.damping_factor, LAMBDA_MAX)
            continue

        trial = x + step.reshape(-1, 2)
        r_trial = _residuals(trial, edges)
        ssq_trial = float(r_trial @ r_trial)
        if ssq_trial < ssq:
            if np.min(r_trial) + 1.0 < COLLAPSE_LENGTH**2:
                raise DegenerateConfiguration("an edge collapsed below length 1e-3 during refinement")
            x, r, ssq = trial, r_trial, ssq_trial
            history.append(ssq)
            accepted += 1
            lam = max(lam / opts.damping_factor, LAMBDA_MIN)
        else:
            if lam >= LAMBDA_MAX:
                break
            lam = min(lam * opts.damping_factor, LAMBDA_MAX)

    final = float(np.max(np.abs(r), initial=0.0))
    moved = np.hypot(*(x - x0).T) if x.size else np.zeros(0)
    trace = RefinementTrace(
        iterations=iterations,
        initial_max_residual=start,
        final_max_residual=final,
        converged=final <= opts.residual_target,
        max_vertex_displacement=float(np.max(moved, initial=0.0)),
        accepted_steps=accepted,
        ssq_history=tuple(history),
    )
    if check and not trace.converged:
        raise DidNotConverge(
            f"max residual {final:.3g} after {iterations} iterations (target {opts.residual_target:g})", trace
        )
    return g.with_coords(x), trace
