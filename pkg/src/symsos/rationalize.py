"""Continued-fraction rounding of numeric solutions to exact rationals.

Rounding acts on the free parameters of the exact affine parametrization,
never on raw matrix entries, so every linear condition keeps holding by
construction and only positive semidefiniteness can fail.  On failure the
denominator bound is escalated and the rounding retried.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .certify import LdlDecomposition, ldl_psd
from .grammodel import GramModel
from .sdpsolve import NumericSolution, SolveStatus
from .symmat import SymMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RoundingConfig:
    denominator_bound: int = 150
    escalation_factor: int = 10
    max_escalations: int = 12

    def __post_init__(self):
        if self.denominator_bound < 1 or self.max_escalations < 0:
            raise ValueError("bounds must be positive")
        if self.escalation_factor < 2:
            raise ValueError("escalation factor must be at least 2")


class RoundingError(Exception):
    """Rounding failed at every denominator bound up to the escalation limit."""

    def __init__(self, attempts: list[int], best_margin: float):
        self.attempts = attempts
        self.best_margin = best_margin
        super().__init__(
            f"no PSD rational matrix found at denominator bounds {attempts}; "
            f"best numeric deflated eigenvalue was {best_margin:.3e}"
        )


def best_rational(x, bound: int) -> Fraction:
    """Best rational approximation p/q to x with q <= bound.

    Ties are broken by smaller denominator, then smaller |p|.  The float is
    first converted to its exact binary rational, then the continued
    fraction of that value is walked; both the final convergent and the
    best semiconvergent are compared exactly.
    """
    if bound < 1:
        raise ValueError("denominator bound must be at least 1")
    r = Fraction(x)
    if r.denominator <= bound:
        return r
    # Convergents h/k of the continued fraction of r.
    h_prev, k_prev = 1, 0
    h_cur, k_cur = int(r.numerator // r.denominator), 1
    frac = r - (r.numerator // r.denominator)
    while frac != 0:
        frac = 1 / frac
        a = frac.numerator // frac.denominator
        frac = frac - a
        h_next = a * h_cur + h_prev
        k_next = a * k_cur + k_prev
        if k_next > bound:
            break
        h_prev, k_prev, h_cur, k_cur = h_cur, k_cur, h_next, k_next
    candidates = [Fraction(h_cur, k_cur)]
    # Largest semiconvergent between the last two convergents still in bound.
    t = (bound - k_prev) // k_cur if k_cur else 0
    if t >= 1 and k_prev + t * k_cur >= 1:
        candidates.append(Fraction(h_prev + t * h_cur, k_prev + t * k_cur))

    def rank(c: Fraction):
        return (abs(r - c), c.denominator, abs(c.numerator))

    return min(candidates, key=rank)


def round_free_values(values, bound: int) -> list[Fraction]:
    return [best_rational(v, bound) for v in values]


def round_solution(
    model: GramModel,
    numeric: NumericSolution,
    config: RoundingConfig | None = None,
) -> SymMatrix:
    """Exact PSD matrix from a numeric solution, escalating the bound as needed.

    Raises RoundingError after max_escalations failures; that signals either
    insufficient numeric accuracy or genuine non-existence of a rational
    certificate.
    """
    config = config or RoundingConfig()
    if numeric.status is not SolveStatus.SOLVED:
        raise ValueError(f"numeric solution has status {numeric.status.value}; cannot round")
    bound = config.denominator_bound
    attempts: list[int] = []
    for _ in range(config.max_escalations + 1):
        attempts.append(bound)
        values = round_free_values(numeric.free_values, bound)
        matrix = model.instantiate(values)
        result = ldl_psd(matrix)
        if isinstance(result, LdlDecomposition):
            logger.info("rounding succeeded at denominator bound %d (rank %d)", bound, result.rank)
            return matrix
        logger.info("rounding failed at denominator bound %d: %s", bound, result.reason)
        bound *= config.escalation_factor
    raise RoundingError(attempts, numeric.min_eigenvalue_deflated)
