"""Command-line front end.

Commands: certify, verify, check-matrix, expand, dominance, poset.

Exit codes:
  0   success / check passed
  1   verification or matrix check failed
  2   rational rounding failed (best numeric margin reported)
  3   SDP suspected infeasible (difference is likely not a sum of squares)
  64  invalid arguments (bad partitions, mismatched weights, bad flags)
  65  malformed input data (unparseable certificate or matrix file)
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import certify as certify_mod
from .pipeline import PipelineStatus, certify_difference
from .posetgen import emit_dot, report_to_json, sweep
from .rationalize import RoundingConfig
from .sdpsolve import SolverConfig
from .symfunc import (
    BasisKind,
    Partition,
    dominance_compare,
    expand,
    normalized,
    normalized_difference,
    partitions_of,
)
from .symmat import SymMatrix

EX_USAGE = 64
EX_DATAERR = 65


def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sdp-tol", type=float, default=1e-9,
                        help="feasibility tolerance on the deflated minimum eigenvalue")
    parser.add_argument("--sdp-iters", type=int, default=200, help="solver iteration limit")
    parser.add_argument("--seed", type=int, default=0, help="seed for all randomized components")


def _solver_config(args) -> SolverConfig:
    return SolverConfig(
        max_iterations=args.sdp_iters,
        feasibility_tolerance=args.sdp_tol,
        seed=args.seed,
    )


def _add_rounding_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--denom-bound", type=int, default=150,
                        help="initial denominator bound for continued-fraction rounding")
    parser.add_argument("--escalation", type=int, default=10,
                        help="factor by which the bound grows after a failed rounding")
    parser.add_argument("--max-escalations", type=int, default=12)


def _rounding_config(args) -> RoundingConfig:
    return RoundingConfig(
        denominator_bound=args.denom_bound,
        escalation_factor=args.escalation,
        max_escalations=args.max_escalations,
    )


def _fail(code: int, message: str) -> SystemExit:
    print(f"error: {message}", file=sys.stderr)
    return SystemExit(code)


def _parse_partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise _fail(EX_USAGE, f"invalid partition {text!r}: {exc}")


def _parse_zero(text: str, nvars: int) -> tuple[Fraction, ...]:
    try:
        point = tuple(Fraction(tok) for tok in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise _fail(EX_USAGE, f"invalid zero {text!r}: {exc}")
    if len(point) != nvars:
        raise _fail(EX_USAGE, f"zero {text!r} must have {nvars} coordinates")
    return point


@dataclass(frozen=True)
class CertifyRequest:
    """Everything one certification run needs."""

    mu: Partition
    lam: Partition
    nvars: int
    rounding: RoundingConfig
    solver: SolverConfig
    extra_zeros: tuple[tuple[Fraction, ...], ...] = ()
    output_path: str = "cert.json"
    dump_model_path: str | None = None

    def __post_init__(self):
        if self.mu.weight != self.lam.weight:
            raise ValueError(
                f"weights differ: |{self.mu}| = {self.mu.weight}, |{self.lam}| = {self.lam.weight}"
            )


# ------------------------------------------------------------------ commands

def cmd_expand(args) -> int:
    try:
        basis = BasisKind.parse(args.basis)
    except ValueError as exc:
        raise _fail(EX_USAGE, str(exc))
    lam = _parse_partition(args.partition)
    try:
        if args.normalized:
            poly = normalized(basis, lam, args.nvars)
        else:
            poly = expand(basis, lam, args.nvars)
    except (ValueError, ZeroDivisionError) as exc:
        raise _fail(EX_USAGE, str(exc))
    if args.squared:
        poly = poly.substitute_squares()
    if args.json:
        print(json.dumps(poly.to_json_obj()))
    else:
        print(poly.to_lines())
    return 0


def cmd_dominance(args) -> int:
    mu = _parse_partition(args.mu)
    lam = _parse_partition(args.lam)
    try:
        rel = dominance_compare(mu, lam)
    except ValueError as exc:
        raise _fail(EX_USAGE, str(exc))
    if args.json:
        print(json.dumps({"mu": str(mu), "lambda": str(lam), "relation": rel.value}))
    else:
        print(rel.value)
    return 0


def run_certify_request(request: CertifyRequest, as_json: bool = False) -> int:
    try:
        outcome = certify_difference(
            request.mu, request.lam, request.nvars,
            solver_config=request.solver,
            rounding_config=request.rounding,
            extra_zeros=request.extra_zeros,
        )
    except ValueError as exc:
        raise _fail(EX_USAGE, str(exc))

    if request.dump_model_path and outcome.model is not None:
        with open(request.dump_model_path, "w") as fh:
            json.dump(outcome.model.debug_dump(), fh, indent=1)

    summary = {
        "mu": str(request.mu),
        "lambda": str(request.lam),
        "nvars": request.nvars,
        "status": outcome.status.value,
        "deflated_min_eigenvalue": None if outcome.numeric is None else outcome.margin,
        "wall_time_seconds": round(outcome.wall_time, 3),
    }
    if outcome.certificate is not None:
        certify_mod.save_certificate(outcome.certificate, request.output_path)
        summary["squares"] = len(outcome.certificate.squares)
        summary["max_denominator_digits"] = outcome.certificate.max_denominator_digits()
        summary["certificate"] = request.output_path
    if as_json:
        print(json.dumps(summary))
    elif outcome.certificate is not None:
        print(f"exact certificate: {summary['squares']} squares, "
              f"max denominator {summary['max_denominator_digits']} digits, "
              f"{summary['wall_time_seconds']}s -> {request.output_path}")
    else:
        print(f"certification failed: {outcome.status.value} "
              f"(deflated min eigenvalue {summary['deflated_min_eigenvalue']})")
    if outcome.status in (PipelineStatus.EXACT, PipelineStatus.TRIVIAL_ZERO):
        return 0
    if outcome.status is PipelineStatus.ROUNDING_FAILED:
        return 2
    return 3


def cmd_certify(args) -> int:
    mu = _parse_partition(args.mu)
    lam = _parse_partition(args.lam)
    try:
        request = CertifyRequest(
            mu=mu,
            lam=lam,
            nvars=args.nvars,
            rounding=_rounding_config(args),
            solver=_solver_config(args),
            extra_zeros=tuple(_parse_zero(z, args.nvars) for z in args.zero),
            output_path=args.output,
            dump_model_path=args.dump_model,
        )
    except ValueError as exc:
        raise _fail(EX_USAGE, str(exc))
    return run_certify_request(request, as_json=args.json)


def cmd_verify(args) -> int:
    try:
        cert = certify_mod.load_certificate(args.certificate)
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        raise _fail(EX_DATAERR, f"cannot read certificate: {exc}")
    report = certify_mod.verify_certificate(cert)
    if args.json:
        print(json.dumps({
            "passed": report.passed,
            "sum_matches": report.sum_matches,
            "gram_psd": report.gram_psd,
            "coefficients_positive": report.coefficients_positive,
            "mismatched_monomials": [
                {"exps": list(e), "expected": str(w), "actual": str(g)}
                for e, w, g in report.mismatched_monomials
            ],
        }))
    else:
        print(report)
    return 0 if report.passed else 1


def cmd_check_matrix(args) -> int:
    mu = _parse_partition(args.mu)
    lam = _parse_partition(args.lam)
    try:
        with open(args.matrix) as fh:
            matrix = SymMatrix.from_text(fh.read())
    except OSError as exc:
        raise _fail(EX_DATAERR, f"cannot read matrix file: {exc}")
    except ValueError as exc:
        raise _fail(EX_DATAERR, f"malformed matrix file: {exc}")
    try:
        target = normalized_difference(BasisKind.HOMOGENEOUS, mu, lam, args.nvars).substitute_squares()
    except ValueError as exc:
        raise _fail(EX_USAGE, str(exc))
    report = certify_mod.check_gram_matrix(matrix, target)
    if args.json:
        print(json.dumps({
            "passed": report.passed,
            "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in report.checks],
        }))
    else:
        print(report)
    return 0 if report.passed else 1


def cmd_poset(args) -> int:
    solver_config = SolverConfig(
        max_iterations=args.sdp_iters,
        feasibility_tolerance=args.sdp_tol,
        seed=args.seed,
        polish_passes=1 if args.exact else 0,
    )
    try:
        result = sweep(
            args.degree, args.nvars,
            mode="exact" if args.exact else "numeric",
            solver_config=solver_config,
            rounding_config=_rounding_config(args),
        )
    except ValueError as exc:
        raise _fail(EX_USAGE, str(exc))
    dot = emit_dot(result.edges, nodes=partitions_of(args.degree))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(dot)
    if args.json:
        print(report_to_json(result))
    elif not args.output:
        print(dot, end="")
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report_to_json(result))
            fh.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symsos",
        description="Exact rational sum-of-squares certificates for differences of "
                    "term-normalized symmetric polynomials.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress to stderr (-vv for solver internals)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="print the monomial expansion of a basis element")
    p.add_argument("--basis", required=True, help="one of m, e, p, h, s")
    p.add_argument("--partition", required=True, help="e.g. 521 or 10,3,1")
    p.add_argument("--nvars", type=int, default=3)
    p.add_argument("--normalized", action="store_true", help="divide by the value at the all-ones point")
    p.add_argument("--squared", action="store_true", help="substitute squares for the variables")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("dominance", help="compare two partitions in dominance order")
    p.add_argument("mu")
    p.add_argument("lam", metavar="lambda")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dominance)

    p = sub.add_parser("certify", help="find an exact SOS certificate for (H_mu - H_lambda)(x^2)")
    p.add_argument("--mu", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--nvars", type=int, default=3)
    p.add_argument("--zero", action="append", default=[],
                   help="extra rational zero of the target, e.g. --zero 1,1,-1 (repeatable)")
    p.add_argument("-o", "--output", default="cert.json", help="certificate output path")
    p.add_argument("--dump-model", default=None, help="write a JSON summary of the Gram model")
    p.add_argument("--json", action="store_true")
    _add_solver_flags(p)
    _add_rounding_flags(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="re-verify a certificate file by exact arithmetic")
    p.add_argument("certificate")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check-matrix", help="check a Gram matrix file against (H_mu - H_lambda)(x^2)")
    p.add_argument("matrix")
    p.add_argument("--mu", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--nvars", type=int, default=3)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check_matrix)

    p = sub.add_parser("poset", help="sweep all partition pairs of a degree and emit a DOT poset")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--nvars", type=int, default=3)
    p.add_argument("--exact", action="store_true", help="run the full exact pipeline per pair")
    p.add_argument("-o", "--output", default=None, help="DOT output path (stdout if omitted)")
    p.add_argument("--report", default=None, help="write the per-pair JSON report here")
    p.add_argument("--json", action="store_true", help="print the per-pair report to stdout")
    _add_solver_flags(p)
    _add_rounding_flags(p)
    p.set_defaults(func=cmd_poset)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING
    if args.verbose == 1:
        level = logging.INFO
    elif args.verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except SystemExit:
        raise
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
