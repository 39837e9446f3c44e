"""End-to-end certification of term-normalized homogeneous differences.

Pipeline per pair (mu, lambda): expand H_mu - H_lambda, substitute squares,
build the symmetry-reduced Gram model with sign-pattern kernel zeros, solve
the deflated eigenvalue SDP, round to rationals, factor exactly, and
re-verify the extracted certificate.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .certify import (
    SosCertificate,
    TOOL_VERSION,
    certificate_from_squares,
    extract_certificate,
    verify_certificate,
)
from .grammodel import GramModel, InfeasibleModelError, build_model, default_sign_zeros
from .polyring import SparsePoly
from .rationalize import RoundingConfig, RoundingError, round_solution
from .sdpsolve import NumericSolution, SolveStatus, SolverConfig, solve
from .symfunc import BasisKind, Partition, normalized_difference
from .symmat import SymMatrix

logger = logging.getLogger(__name__)


class PipelineStatus(Enum):
    EXACT = "exact"
    TRIVIAL_ZERO = "trivial_zero"
    ROUNDING_FAILED = "rounding_failed"
    INFEASIBLE_SUSPECTED = "infeasible_suspected"
    INDETERMINATE = "indeterminate"


@dataclass
class CertificationOutcome:
    mu: Partition
    lam: Partition
    nvars: int
    status: PipelineStatus
    target: SparsePoly
    model: GramModel | None = None
    numeric: NumericSolution | None = None
    matrix: SymMatrix | None = None
    certificate: SosCertificate | None = None
    wall_time: float = 0.0

    @property
    def margin(self) -> float:
        return self.numeric.min_eigenvalue_deflated if self.numeric else float("nan")


def certify_difference(
    mu: Partition,
    lam: Partition,
    nvars: int,
    solver_config: SolverConfig | None = None,
    rounding_config: RoundingConfig | None = None,
    extra_zeros: Sequence[Sequence[Fraction]] = (),
    use_symmetry: bool = True,
) -> CertificationOutcome:
    """Certify (H_mu - H_lambda)(x_1^2, ..., x_n^2) as an exact sum of squares."""
    start = time.monotonic()
    meta = {"mu": str(mu), "lambda": str(lam), "nvars": nvars, "tool-version": TOOL_VERSION}
    diff = normalized_difference(BasisKind.HOMOGENEOUS, mu, lam, nvars)
    target = diff.substitute_squares()
    if target.is_zero():
        cert = certificate_from_squares(target, [], meta)
        return CertificationOutcome(
            mu, lam, nvars, PipelineStatus.TRIVIAL_ZERO, target,
            certificate=cert, wall_time=time.monotonic() - start,
        )

    zeros = list(default_sign_zeros(nvars)) + [tuple(Fraction(v) for v in z) for z in extra_zeros]
    try:
        model = build_model(target, use_symmetry=use_symmetry, zeros=zeros)
    except InfeasibleModelError:
        logger.info("model for %s vs %s is infeasible", mu, lam)
        return CertificationOutcome(
            mu, lam, nvars, PipelineStatus.INFEASIBLE_SUSPECTED, target,
            wall_time=time.monotonic() - start,
        )
    logger.info(
        "model built: basis %d, free parameters %d, kernel vectors %d",
        len(model.basis), len(model.free_params), model.num_kernel_vectors,
    )

    numeric = solve(model, solver_config)
    if numeric.status is SolveStatus.INFEASIBLE_SUSPECTED:
        return CertificationOutcome(
            mu, lam, nvars, PipelineStatus.INFEASIBLE_SUSPECTED, target,
            model=model, numeric=numeric, wall_time=time.monotonic() - start,
        )
    if numeric.status is not SolveStatus.SOLVED:
        return CertificationOutcome(
            mu, lam, nvars, PipelineStatus.INDETERMINATE, target,
            model=model, numeric=numeric, wall_time=time.monotonic() - start,
        )

    try:
        matrix = round_solution(model, numeric, rounding_config)
    except RoundingError as exc:
        logger.info("rounding failed for %s vs %s: %s", mu, lam, exc)
        return CertificationOutcome(
            mu, lam, nvars, PipelineStatus.ROUNDING_FAILED, target,
            model=model, numeric=numeric, wall_time=time.monotonic() - start,
        )

    cert = extract_certificate(matrix, model.basis, meta)
    report = verify_certificate(cert)
    if not report.passed or cert.target != target:
        # Cannot happen if the factorization is correct; fail loudly.
        raise RuntimeError(f"internal verification failed for {mu} vs {lam}: {report}")
    return CertificationOutcome(
        mu, lam, nvars, PipelineStatus.EXACT, target,
        model=model, numeric=numeric, matrix=matrix, certificate=cert,
        wall_time=time.monotonic() - start,
    )
