"""Numeric solution of the reduced Gram feasibility problem.

The exact parametrization makes every linear condition hold structurally,
so only positive semidefiniteness is left to the numerics.  Because the
forced kernel puts every feasible matrix on the boundary of the PSD cone,
we maximize the minimum eigenvalue of A(theta) restricted to the orthogonal
complement of the kernel ("deflated"), which pushes the solution into the
relative interior where rational rounding can succeed.

The maximization is a small dense SDP (max t s.t. P^T A(theta) P - t I is
PSD) handed to cvxopt's primal-dual interior-point solver, followed by a
deterministic coordinate-ascent polish that only accepts improving steps.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .grammodel import GramModel

logger = logging.getLogger(__name__)

# Kernel-vector singular values below this are treated as rank deficiency.
_RANK_TOL = 1e-10


class SolveStatus(Enum):
    SOLVED = "solved"
    INFEASIBLE_SUSPECTED = "infeasible_suspected"
    ITERATION_LIMIT = "iteration_limit"


@dataclass(frozen=True)
class SolverConfig:
    max_iterations: int = 200
    feasibility_tolerance: float = 1e-9
    step_tolerance: float = 1e-9
    seed: int = 0
    polish_passes: int = 1

    def __post_init__(self):
        if self.feasibility_tolerance <= 0 or self.step_tolerance <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class NumericSolution:
    free_values: tuple[float, ...]
    min_eigenvalue_deflated: float
    status: SolveStatus
    objective_trace: tuple[float, ...]

    @property
    def solved(self) -> bool:
        return self.status is SolveStatus.SOLVED


def complement_basis(kernel: Sequence[Sequence[float]], dim: int) -> np.ndarray:
    """Orthonormal basis (columns) of the orthogonal complement of the kernel."""
    if len(kernel) == 0:
        return np.eye(dim)
    k = np.asarray(kernel, dtype=float)
    if k.shape[1] != dim:
        raise ValueError("kernel vector length mismatch")
    _, svals, vt = np.linalg.svd(k, full_matrices=True)
    rank = int(np.sum(svals > _RANK_TOL * max(1.0, svals[0])))
    if rank >= dim:
        raise ValueError("kernel spans the whole space; nothing to deflate")
    return vt[rank:].T


def min_eigenvalue_deflated(a: np.ndarray, kernel: Sequence[Sequence[float]]) -> float:
    """Minimum eigenvalue of P^T A P, P spanning the kernel's complement."""
    a = np.asarray(a, dtype=float)
    p = complement_basis(kernel, a.shape[0])
    deflated = p.T @ a @ p
    return float(np.linalg.eigvalsh((deflated + deflated.T) / 2.0)[0])


def _status_from_margin(margin: float, config: SolverConfig) -> SolveStatus:
    if margin >= -config.feasibility_tolerance:
        return SolveStatus.SOLVED
    if margin < -1e-4:
        return SolveStatus.INFEASIBLE_SUSPECTED
    return SolveStatus.ITERATION_LIMIT


def _interior_point(a0: np.ndarray, bs: list[np.ndarray], config: SolverConfig) -> np.ndarray | None:
    """IPM pass: maximize t subject to A0 + sum(theta_k B_k) - t I PSD."""
    from cvxopt import matrix, solvers

    m = a0.shape[0]
    nvar = len(bs) + 1
    cols = [(-b).reshape(m * m, order="F") for b in bs]
    cols.append(np.eye(m).reshape(m * m))
    g = matrix(np.column_stack(cols))
    h = matrix(a0)
    c = matrix([0.0] * len(bs) + [-1.0])
    # Cap t so the problem stays bounded even for targets with no
    # eigenvalue ceiling along the affine family.
    cap = 1e3 * (1.0 + float(np.abs(a0).max()))
    gl = matrix(np.array([[0.0] * len(bs) + [1.0]]))
    hl = matrix([cap])
    show_progress = logger.isEnabledFor(logging.DEBUG)
    options = {
        "show_progress": show_progress,
        "maxiters": config.max_iterations,
        "abstol": config.step_tolerance,
        "reltol": config.step_tolerance,
        "feastol": config.step_tolerance,
    }
    try:
        if show_progress:
            # cvxopt prints its per-iteration table to stdout; forward it to
            # the stderr logger instead.
            import contextlib
            import io

            buf = io.StringIO()
            with contextlib.redirect_stdout(buf):
                sol = solvers.sdp(c, Gl=gl, hl=hl, Gs=[g], hs=[h], options=options)
            for line in buf.getvalue().splitlines():
                logger.debug("ipm %s", line)
        else:
            sol = solvers.sdp(c, Gl=gl, hl=hl, Gs=[g], hs=[h], options=options)
    except (ValueError, ArithmeticError) as exc:
        logger.warning("interior-point solver raised %s", exc)
        return None
    logger.info("interior-point status: %s", sol["status"])
    if sol["x"] is None:
        return None
    theta_t = np.array(sol["x"]).ravel()
    return theta_t[: len(bs)]


def _polish(
    theta: np.ndarray,
    objective,
    config: SolverConfig,
    trace: list[float],
) -> np.ndarray:
    """Deterministic coordinate ascent; accepted steps never decrease the objective."""
    best = objective(theta)
    trace.append(best)
    for sweep in range(config.polish_passes):
        improved = False
        for k in range(len(theta)):
            radius = max(1e-7, 1e-3 * (1.0 + abs(theta[k])))
            lo, hi = theta[k] - radius, theta[k] + radius
            # Ternary search: the objective is concave along every line.
            for _ in range(40):
                m1 = lo + (hi - lo) / 3.0
                m2 = hi - (hi - lo) / 3.0
                t1, t2 = theta.copy(), theta.copy()
                t1[k], t2[k] = m1, m2
                if objective(t1) < objective(t2):
                    lo = m1
                else:
                    hi = m2
            cand = theta.copy()
            cand[k] = (lo + hi) / 2.0
            val = objective(cand)
            if val > best + 1e-15:
                step = abs(cand[k] - theta[k])
                logger.debug("polish accept coord %d: objective %.6e step %.3e", k, val, step)
                theta, best = cand, val
                trace.append(best)
                improved = True
        logger.info("polish sweep %d: objective %.6e", sweep, best)
        if not improved:
            break
    return theta


def solve(model: GramModel, config: SolverConfig | None = None) -> NumericSolution:
    """Maximize the deflated minimum eigenvalue over the model's free parameters."""
    config = config or SolverConfig()
    a0, bs = model.float_family()
    n = a0.shape[0]
    kernel = model.kernel_matrix_float()
    p = complement_basis(kernel, n)
    a0_d = p.T @ a0 @ p
    bs_d = [p.T @ b @ p for b in bs]

    def objective(theta: np.ndarray) -> float:
        m = a0_d.copy()
        for t, b in zip(theta, bs_d):
            m += t * b
        return float(np.linalg.eigvalsh((m + m.T) / 2.0)[0])

    trace: list[float] = []
    if len(bs) == 0:
        margin = objective(np.zeros(0))
        trace.append(margin)
        status = _status_from_margin(margin, config)
        logger.info("no free parameters; deflated min eigenvalue %.3e", margin)
        return NumericSolution((), margin, status, tuple(trace))

    theta = _interior_point(a0_d, bs_d, config)
    if theta is None:
        theta = np.zeros(len(bs))
    theta = _polish(theta, objective, config, trace)
    margin = objective(theta)
    status = _status_from_margin(margin, config)
    logger.info("solve finished: status %s, deflated min eigenvalue %.3e", status.value, margin)
    return NumericSolution(tuple(float(t) for t in theta), margin, status, tuple(trace))
