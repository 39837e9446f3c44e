"""Sweep all partition pairs of one degree and emit the certification poset.

For each ordered pair (mu, lambda) of distinct partitions the sweep tries
to certify (H_mu - H_lambda)(x^2) as a sum of squares.  Strict dominance
pairs become black edges; certified incomparable pairs are counterexample
(blue) edges.  The emitted graph is transitively reduced: black edges are
the covering pairs of dominance order, and a blue edge is dropped when the
remaining certified relations already imply it.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

from .pipeline import PipelineStatus, certify_difference
from .rationalize import RoundingConfig
from .sdpsolve import SolverConfig
from .symfunc import Dominance, Partition, dominance_compare, partitions_of

logger = logging.getLogger(__name__)

# A pair certifies numerically when the deflated minimum eigenvalue clears
# this margin; anything between the margins is reported as indeterminate
# and never emitted as a counterexample.
NUMERIC_ACCEPT = 1e-7
NUMERIC_REJECT = -1e-4


@dataclass(frozen=True)
class PosetEdge:
    lam: Partition  # tail: the dominated / smaller side
    mu: Partition   # head: H_mu - H_lam is the certified difference
    kind: str       # "dominance" | "counterexample"
    status: str     # "numeric_sos" | "exact_sos" | "not_certified"
    margin: float


@dataclass(frozen=True)
class PairReport:
    mu: Partition
    lam: Partition
    relation: str
    status: str
    margin: float

    def to_json_obj(self) -> dict:
        return {
            "mu": str(self.mu),
            "lambda": str(self.lam),
            "relation": self.relation,
            "status": self.status,
            "margin": None if self.margin != self.margin else self.margin,
        }


@dataclass
class SweepResult:
    degree: int
    nvars: int
    edges: list[PosetEdge]
    report: list[PairReport]


def _attempt_exact(mu, lam, nvars, solver_config, rounding_config):
    outcome = certify_difference(
        mu, lam, nvars, solver_config=solver_config, rounding_config=rounding_config,
    )
    margin = outcome.margin
    if outcome.status is PipelineStatus.EXACT:
        return "exact_sos", margin
    if outcome.status is PipelineStatus.ROUNDING_FAILED and margin >= NUMERIC_ACCEPT:
        return "numeric_sos", margin
    if margin != margin or NUMERIC_REJECT < margin < NUMERIC_ACCEPT:
        return "indeterminate", margin
    return "not_certified", margin


def _attempt_numeric(mu, lam, nvars, solver_config):
    """Solve the SDP only; the exact rounding stage is skipped."""
    from .grammodel import InfeasibleModelError, build_model, default_sign_zeros
    from .sdpsolve import solve
    from .symfunc import BasisKind, normalized_difference

    target = normalized_difference(BasisKind.HOMOGENEOUS, mu, lam, nvars).substitute_squares()
    try:
        model = build_model(target, use_symmetry=True, zeros=default_sign_zeros(nvars))
    except InfeasibleModelError:
        return "not_certified", float("-inf")
    numeric = solve(model, solver_config)
    margin = numeric.min_eigenvalue_deflated
    if margin >= NUMERIC_ACCEPT:
        return "numeric_sos", margin
    if margin <= NUMERIC_REJECT:
        return "not_certified", margin
    return "indeterminate", margin


def _attempt(mu, lam, nvars, mode, solver_config, rounding_config):
    """Certify one ordered pair; returns (status, margin)."""
    if mode == "exact":
        return _attempt_exact(mu, lam, nvars, solver_config, rounding_config)
    return _attempt_numeric(mu, lam, nvars, solver_config)


def sweep(
    degree: int,
    nvars: int = 3,
    mode: str = "numeric",
    solver_config: SolverConfig | None = None,
    rounding_config: RoundingConfig | None = None,
) -> SweepResult:
    """Attempt certification for every ordered pair of partitions of `degree`."""
    if degree < 2:
        raise ValueError("degree must be at least 2")
    if mode not in ("numeric", "exact"):
        raise ValueError(f"unknown mode {mode!r}")
    if solver_config is None and mode == "numeric":
        # The sweep only needs margins at the 1e-7 threshold, which the
        # interior-point pass already delivers; skip the polish stage.
        solver_config = SolverConfig(polish_passes=0)
    parts = partitions_of(degree)
    report: list[PairReport] = []
    certified: dict[tuple[Partition, Partition], tuple[str, float]] = {}
    dominance_pairs: list[tuple[Partition, Partition, str, float]] = []

    for mu in parts:
        for lam in parts:
            if mu == lam:
                continue
            rel = dominance_compare(mu, lam)
            if rel is Dominance.DOMINATED_BY:
                continue  # the mirrored ordered pair covers it
            status, margin = _attempt(mu, lam, nvars, mode, solver_config, rounding_config)
            logger.info("pair mu=%s lambda=%s (%s): %s margin %.3e", mu, lam, rel.value, status, margin)
            report.append(PairReport(mu, lam, rel.value, status, margin))
            if status in ("numeric_sos", "exact_sos"):
                certified[(lam, mu)] = (status, margin)
            if rel is Dominance.DOMINATES:
                dominance_pairs.append((lam, mu, status, margin))

    edges = _reduce_edges(parts, dominance_pairs, certified)
    return SweepResult(degree, nvars, edges, report)


def _reduce_edges(parts, dominance_pairs, certified) -> list[PosetEdge]:
    # Black edges: covering pairs of the dominance order.
    strict = {(lam, mu) for lam, mu, _, _ in dominance_pairs}
    covers = set()
    for (lam, mu) in strict:
        if not any((lam, nu) in strict and (nu, mu) in strict for nu in parts):
            covers.add((lam, mu))
    edges: list[PosetEdge] = []
    for lam, mu, status, margin in dominance_pairs:
        if (lam, mu) in covers:
            edges.append(PosetEdge(lam, mu, "dominance", status, margin))

    # Blue edges: certified incomparable pairs not implied by the union of
    # all certified relations (dominance closure plus the other blue edges).
    blue = [
        (lam, mu) for (lam, mu) in certified
        if dominance_compare(mu, lam) is Dominance.INCOMPARABLE
    ]
    all_relations = strict | set(blue)

    def reachable(src, dst, skip):
        stack = [src]
        seen = {src}
        while stack:
            node = stack.pop()
            for (a, b) in all_relations:
                if a == node and (a, b) != skip and b not in seen:
                    if b == dst:
                        return True
                    seen.add(b)
                    stack.append(b)
        return False

    for (lam, mu) in sorted(blue, key=lambda e: (str(e[0]), str(e[1]))):
        if not reachable(lam, mu, skip=(lam, mu)):
            status, margin = certified[(lam, mu)]
            edges.append(PosetEdge(lam, mu, "counterexample", status, margin))

    edges.sort(key=lambda e: (e.kind, str(e.lam), str(e.mu)))
    return edges


def emit_dot(edges: list[PosetEdge], nodes: list[Partition] | None = None) -> str:
    """Deterministic DOT digraph; certification failures are omitted."""
    shown = [e for e in edges if e.status in ("numeric_sos", "exact_sos")]
    if nodes is None:
        seen = []
        for e in shown:
            for p in (e.lam, e.mu):
                if p not in seen:
                    seen.append(p)
        nodes = seen
    lines = ["digraph {"]
    for p in nodes:
        lines.append(f'  "{p}";')
    for e in sorted(shown, key=lambda e: (str(e.lam), str(e.mu))):
        color = "blue" if e.kind == "counterexample" else "black"
        lines.append(f'  "{e.lam}" -> "{e.mu}" [color={color}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def report_to_json(result: SweepResult) -> str:
    obj = {
        "degree": result.degree,
        "nvars": result.nvars,
        "pairs": [r.to_json_obj() for r in result.report],
    }
    return json.dumps(obj, indent=1)
