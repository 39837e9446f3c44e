"""Exact rational verification: pivoted LDL^T, certificate extraction,
independent re-verification, and whole-matrix checking.

Positive semidefiniteness is decided over exact rationals.  At each step
the largest remaining diagonal entry is chosen as pivot (ties broken by
smallest index).  A positive pivot is eliminated; a negative diagonal
entry, or a nonzero off-diagonal entry in an all-zero-diagonal trailing
block, yields an explicit rational witness vector v with v^T A v < 0.
This rule is sound and complete for semidefiniteness without 2x2 pivots.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .grammodel import MonomialBasis, basis_permutation, build_basis, default_sign_zeros
from .polyring import SparsePoly
from .symmat import SymMatrix

TOOL_VERSION = "symsos 0.1.0"


class CertificationError(Exception):
    """Internal certificate extraction failed; indicates a factorization bug."""


@dataclass(frozen=True)
class LdlDecomposition:
    """P^T A P = L D L^T with unit lower-triangular L, exact rationals.

    perm maps permuted position a to the original index perm[a]; lower is
    dense row-major in permuted coordinates; diag has one entry per column
    (zero for the trailing rank-deficient block).
    """

    perm: tuple[int, ...]
    diag: tuple[Fraction, ...]
    lower: tuple[tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)


@dataclass(frozen=True)
class NotPsdWitness:
    """Exact evidence of indefiniteness: value = v^T A v < 0."""

    vector: tuple[Fraction, ...]
    value: Fraction
    reason: str


def ldl_psd(a: SymMatrix) -> LdlDecomposition | NotPsdWitness:
    """Decide positive semidefiniteness of an exact symmetric matrix."""
    if not a.is_rational():
        raise ValueError("ldl_psd requires exact rational entries")
    n = a.n
    s = [[Fraction(a.entry(i, j)) for j in range(n)] for i in range(n)]
    remaining = list(range(n))
    order: list[int] = []
    diag: list[Fraction] = []
    cols: list[dict[int, Fraction]] = []

    def lift_witness(w: dict[int, Fraction], reason: str) -> NotPsdWitness:
        # Extend w (a vector on the current Schur block with w^T S w < 0) to
        # full coordinates v with v^T A v = w^T S w, by zeroing the already
        # eliminated components of L^T v.
        v: dict[int, Fraction] = {i: w.get(i, Fraction(0)) for i in remaining}
        for k in reversed(range(len(cols))):
            col = cols[k]
            pivot = order[k]
            acc = Fraction(0)
            for i, c in col.items():
                if i != pivot:
                    acc += c * v[i]
            v[pivot] = -acc
        vec = tuple(v.get(i, Fraction(0)) for i in range(n))
        av = a.matvec(vec)
        value = sum(x * y for x, y in zip(vec, av))
        if value >= 0:
            raise CertificationError("witness construction failed; factorization bug")
        return NotPsdWitness(vec, value, reason)

    while remaining:
        r = max(remaining, key=lambda i: (s[i][i], -i))
        d = s[r][r]
        if d < 0:
            return lift_witness({r: Fraction(1)}, f"negative pivot {d} at index {r}")
        if d == 0:
            # The largest diagonal is zero, so every remaining diagonal is <= 0.
            neg = next((i for i in remaining if s[i][i] < 0), None)
            if neg is not None:
                return lift_witness({neg: Fraction(1)}, f"negative diagonal {s[neg][neg]} at index {neg}")
            off = None
            for ai in range(len(remaining)):
                for bj in range(ai + 1, len(remaining)):
                    i, j = remaining[ai], remaining[bj]
                    if s[i][j] != 0:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                break  # remaining block is identically zero: PSD
            i, j = off
            sign = Fraction(1) if s[i][j] > 0 else Fraction(-1)
            return lift_witness(
                {i: Fraction(1), j: -sign},
                f"nonzero off-diagonal {s[i][j]} at ({i}, {j}) in a zero-diagonal block",
            )
        # positive pivot: eliminate
        order.append(r)
        diag.append(d)
        remaining.remove(r)
        col = {r: Fraction(1)}
        for i in remaining:
            col[i] = s[i][r] / d
        for ai in range(len(remaining)):
            i = remaining[ai]
            if col[i] == 0:
                continue
            for bj in range(ai, len(remaining)):
                j = remaining[bj]
                if col[j] == 0:
                    continue
                s[i][j] -= col[i] * d * col[j]
                if i != j:
                    s[j][i] = s[i][j]
        cols.append(col)

    perm = tuple(order + sorted(remaining))
    rank = len(order)
    diag_full = tuple(diag + [Fraction(0)] * (n - rank))
    lower = []
    for aidx in range(n):
        orig = perm[aidx]
        row = []
        for b in range(n):
            if b < rank:
                row.append(cols[b].get(orig, Fraction(0)))
            else:
                row.append(Fraction(1) if aidx == b else Fraction(0))
        lower.append(tuple(row))
    return LdlDecomposition(perm, diag_full, tuple(lower))


def gram_to_poly(a: SymMatrix, basis: MonomialBasis) -> SparsePoly:
    """Expand m^T A m exactly."""
    if a.n != len(basis):
        raise ValueError(f"matrix dimension {a.n} does not match basis size {len(basis)}")
    terms: dict[tuple[int, ...], Fraction] = {}
    for i in range(a.n):
        for j in range(i, a.n):
            c = Fraction(a.entry(i, j))
            if c == 0:
                continue
            if i != j:
                c *= 2
            prod = tuple(x + y for x, y in zip(basis.monomials[i], basis.monomials[j]))
            acc = terms.get(prod, Fraction(0)) + c
            if acc == 0:
                terms.pop(prod, None)
            else:
                terms[prod] = acc
    return SparsePoly(basis.nvars, terms)


@dataclass(frozen=True)
class SosCertificate:
    """target = sum(coeff * poly^2) with positive rational coefficients."""

    target: SparsePoly
    squares: tuple[tuple[Fraction, SparsePoly], ...]
    gram: SymMatrix
    permutation: tuple[int, ...]
    meta: dict = field(default_factory=dict)

    def max_denominator_digits(self) -> int:
        digits = 1
        for e in self.gram.entries:
            digits = max(digits, len(str(Fraction(e).denominator)))
        for coeff, poly in self.squares:
            digits = max(digits, len(str(coeff.denominator)))
            for _, c in poly.items():
                digits = max(digits, len(str(c.denominator)))
        return digits


def extract_certificate(a: SymMatrix, basis: MonomialBasis, meta: dict | None = None) -> SosCertificate:
    """Extract the explicit sum of squares from a PSD exact Gram matrix.

    The certificate identity is re-verified by exact expansion before
    returning; failure aborts loudly since it can only mean a bug.
    """
    result = ldl_psd(a)
    if isinstance(result, NotPsdWitness):
        raise CertificationError(f"matrix is not PSD: {result.reason}")
    n = a.n
    squares: list[tuple[Fraction, SparsePoly]] = []
    for k in range(result.rank):
        terms: dict[tuple[int, ...], Fraction] = {}
        for aidx in range(n):
            c = result.lower[aidx][k]
            if c != 0:
                terms[basis.monomials[result.perm[aidx]]] = c
        squares.append((result.diag[k], SparsePoly(basis.nvars, terms)))
    target = gram_to_poly(a, basis)
    total = SparsePoly.zero(basis.nvars)
    for coeff, poly in squares:
        total = total + (poly * poly).scale(coeff)
    if total != target:
        raise CertificationError("sum of extracted squares does not reproduce m^T A m")
    return SosCertificate(target, tuple(squares), a, result.perm, dict(meta or {}))


def certificate_from_squares(
    target: SparsePoly,
    squares: Sequence[tuple[Fraction, SparsePoly]],
    meta: dict | None = None,
) -> SosCertificate:
    """Package an explicit list of squares, synthesizing its Gram matrix.

    The squares must be homogeneous of one common degree; the Gram matrix
    is sum(d_i v_i v_i^T) over the matching monomial basis.
    """
    degrees = {poly.homogeneous_degree() for _, poly in squares if not poly.is_zero()}
    if len(degrees) > 1:
        raise ValueError(f"squares have mixed degrees {degrees}")
    if degrees:
        d = degrees.pop()
        if d is None:
            raise ValueError("squares must be homogeneous")
        basis = build_basis(target.nvars, d)
        size = len(basis)
        dense = [[Fraction(0)] * size for _ in range(size)]
        for coeff, poly in squares:
            vec = [poly.coefficient(m) for m in basis.monomials]
            for i in range(size):
                if vec[i] == 0:
                    continue
                for j in range(i, size):
                    dense[i][j] += Fraction(coeff) * vec[i] * vec[j]
        entries = [dense[i][j] for i in range(size) for j in range(i, size)]
        gram = SymMatrix(size, entries)
    else:
        gram = SymMatrix(0, [])
    return SosCertificate(
        target,
        tuple((Fraction(c), p) for c, p in squares),
        gram,
        tuple(range(gram.n)),
        dict(meta or {}),
    )


@dataclass(frozen=True)
class VerifyReport:
    sum_matches: bool
    gram_psd: bool
    coefficients_positive: bool
    mismatched_monomials: tuple[tuple[tuple[int, ...], Fraction, Fraction], ...]

    @property
    def passed(self) -> bool:
        return self.sum_matches and self.gram_psd and self.coefficients_positive

    def __str__(self) -> str:
        if self.passed:
            return "PASS: certificate verifies exactly"
        lines = ["FAIL:"]
        if not self.coefficients_positive:
            lines.append("  a square has a nonpositive coefficient")
        if not self.gram_psd:
            lines.append("  Gram matrix is not positive semidefinite")
        if not self.sum_matches:
            lines.append("  sum of squares does not match the target; offending monomials:")
            for exps, want, got in self.mismatched_monomials:
                lines.append(f"    {exps}: expected {want}, got {got}")
        return "\n".join(lines)


def verify_certificate(cert: SosCertificate) -> VerifyReport:
    """Recompute the squares exactly and re-check the Gram matrix."""
    coefficients_positive = all(c > 0 for c, _ in cert.squares)
    total = SparsePoly.zero(cert.target.nvars)
    for coeff, poly in cert.squares:
        total = total + (poly * poly).scale(coeff)
    mismatches = []
    for exps in sorted(cert.target.support() | total.support()):
        want = cert.target.coefficient(exps)
        got = total.coefficient(exps)
        if want != got:
            mismatches.append((exps, want, got))
    gram_psd = cert.gram.n == 0 or isinstance(ldl_psd(cert.gram), LdlDecomposition)
    return VerifyReport(not mismatches, gram_psd, coefficients_positive, tuple(mismatches))


# ------------------------------------------------------------------ JSON certificates

def certificate_to_json_obj(cert: SosCertificate) -> dict:
    meta = dict(cert.meta)
    meta.setdefault("nvars", cert.target.nvars)
    meta.setdefault("tool-version", TOOL_VERSION)
    return {
        "target": cert.target.to_json_obj(),
        "squares": [
            {"coeff": f"{c.numerator}/{c.denominator}", "poly": p.to_json_obj()}
            for c, p in cert.squares
        ],
        "gram": {
            "dim": cert.gram.n,
            "entries": [
                f"{Fraction(e).numerator}/{Fraction(e).denominator}" for e in cert.gram.entries
            ],
        },
        "meta": meta,
    }


def certificate_from_json_obj(obj: dict) -> SosCertificate:
    meta = dict(obj.get("meta", {}))
    nvars = meta.get("nvars")
    target = SparsePoly.from_json_obj(obj["target"], nvars=nvars)
    squares = tuple(
        (Fraction(item["coeff"]), SparsePoly.from_json_obj(item["poly"], nvars=target.nvars))
        for item in obj["squares"]
    )
    gram = SymMatrix(obj["gram"]["dim"], [Fraction(e) for e in obj["gram"]["entries"]])
    return SosCertificate(target, squares, gram, tuple(range(gram.n)), meta)


def save_certificate(cert: SosCertificate, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(certificate_to_json_obj(cert), fh, indent=1)
        fh.write("\n")


def load_certificate(path: str) -> SosCertificate:
    with open(path) as fh:
        return certificate_from_json_obj(json.load(fh))


# ------------------------------------------------------------------ matrix checking

@dataclass(frozen=True)
class MatrixCheckReport:
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def __str__(self) -> str:
        lines = []
        for name, ok, detail in self.checks:
            status = "ok" if ok else "FAIL"
            lines.append(f"{name}: {status}" + (f" ({detail})" if detail else ""))
        return "\n".join(lines)


def check_gram_matrix(a: SymMatrix, target: SparsePoly) -> MatrixCheckReport:
    """Check a candidate Gram matrix for a symmetric even target, exactly.

    Verifies dimension, invariance under the permutation action, the kernel
    conditions at the sign-pattern zeros, exact reconstruction of the
    target, and positive semidefiniteness.  Every check is named so a
    failure is attributable.
    """
    checks: list[tuple[str, bool, str]] = []
    deg = target.homogeneous_degree()
    if deg is None or deg % 2 != 0:
        checks.append(("target-even-homogeneous", False, f"degree {deg}"))
        return MatrixCheckReport(tuple(checks))
    basis = build_basis(target.nvars, deg // 2)
    if a.n != len(basis):
        checks.append(("dimension", False, f"matrix is {a.n}x{a.n}, basis needs {len(basis)}"))
        return MatrixCheckReport(tuple(checks))
    checks.append(("dimension", True, f"{a.n}x{a.n}"))
    checks.append(("symmetry", True, "upper-triangle storage is symmetric by construction"))

    commutes = True
    detail = ""
    for p in itertools.permutations(range(basis.nvars)):
        sigma = basis_permutation(basis, p)
        for i in range(a.n):
            for j in range(i, a.n):
                if a.entry(sigma[i], sigma[j]) != a.entry(i, j):
                    commutes = False
                    detail = f"entry ({i}, {j}) moves under permutation {p}"
                    break
            if not commutes:
                break
        if not commutes:
            break
    checks.append(("permutation-invariance", commutes, detail))

    kernel_ok = True
    detail = ""
    for point in default_sign_zeros(target.nvars):
        if target.eval(point) != 0:
            kernel_ok = False
            detail = f"target does not vanish at {tuple(map(str, point))}"
            break
        vec = basis.evaluate(point)
        image = a.matvec(vec)
        if any(v != 0 for v in image):
            kernel_ok = False
            detail = f"A m(x*) != 0 at {tuple(map(str, point))}"
            break
    checks.append(("kernel-at-sign-zeros", kernel_ok, detail))

    recon = gram_to_poly(a, basis)
    if recon == target:
        checks.append(("reconstruction", True, ""))
    else:
        bad = sorted(
            (e for e in recon.support() | target.support()
             if recon.coefficient(e) != target.coefficient(e)),
        )
        checks.append(("reconstruction", False, f"first mismatch at {bad[0]}"))

    result = ldl_psd(a)
    if isinstance(result, LdlDecomposition):
        checks.append(("positive-semidefinite", True, f"rank {result.rank}"))
    else:
        checks.append(("positive-semidefinite", False, result.reason))
    return MatrixCheckReport(tuple(checks))
