"""Exact LDL^T, certificate extraction/verification, matrix checking."""

import random
from fractions import Fraction

import pytest

from helpers import charpoly_psd_oracle, exact_rank, random_rational_symmatrix
from symsos.certify import (
    CertificationError,
    LdlDecomposition,
    NotPsdWitness,
    SosCertificate,
    certificate_from_json_obj,
    certificate_from_squares,
    certificate_to_json_obj,
    check_gram_matrix,
    extract_certificate,
    ldl_psd,
    verify_certificate,
)
from symsos.fixtures import (
    agm_sextic_binomial_certificate,
    agm_sextic_ldl_certificate,
    agm_sextic_trinomial_certificate,
    h21_h111_gram,
    h21_h111_squared,
)
from symsos.grammodel import build_basis
from symsos.polyring import SparsePoly
from symsos.symmat import SymMatrix


def reconstruct(decomp: LdlDecomposition, n: int) -> list[list[Fraction]]:
    """L D L^T at permuted positions mapped back to original coordinates."""
    out = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            acc = Fraction(0)
            for k in range(n):
                acc += decomp.lower[a][k] * decomp.diag[k] * decomp.lower[b][k]
            out[decomp.perm[a]][decomp.perm[b]] = acc
    return out


class TestLdlPsd:
    def test_identity(self):
        result = ldl_psd(SymMatrix.from_rows([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]))
        assert isinstance(result, LdlDecomposition)
        assert result.diag == (Fraction(1), Fraction(1))
        assert result.lower == ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))

    def test_indefinite_diagonal(self):
        result = ldl_psd(SymMatrix.from_rows([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]]))
        assert isinstance(result, NotPsdWitness)
        assert result.value < 0
        v = result.vector
        assert v[0] == 0 and v[1] != 0  # the -1 pivot is the witness direction

    def test_zero_diagonal_nonzero_offdiagonal(self):
        result = ldl_psd(SymMatrix.from_rows([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]))
        assert isinstance(result, NotPsdWitness)
        assert result.value < 0

    def test_reference_matrix_rank_and_squares(self):
        a = h21_h111_gram()
        result = ldl_psd(a)
        assert isinstance(result, LdlDecomposition)
        assert result.rank == 6
        # The six extracted squares agree with the published six, compared
        # as polynomials d * q^2 (the (d, q) split is only canonical up to
        # rescaling q).
        basis = build_basis(3, 3)
        cert = extract_certificate(a, basis)
        ours = {str((poly * poly).scale(coeff)) for coeff, poly in cert.squares}

        def term(c, terms):
            q = SparsePoly(3, terms)
            return str((q * q).scale(Fraction(*c)))

        published = {
            term((1, 216), {(3, 0, 0): 2, (1, 2, 0): -1, (1, 0, 2): -1}),
            term((1, 216), {(2, 1, 0): 2, (0, 3, 0): -1, (0, 1, 2): -1}),
            term((1, 72), {(1, 2, 0): 1, (1, 0, 2): -1}),
            term((1, 72), {(0, 3, 0): 1, (0, 1, 2): -1}),
            term((1, 216), {(2, 0, 1): 2, (0, 2, 1): -1, (0, 0, 3): -1}),
            term((1, 72), {(0, 2, 1): 1, (0, 0, 3): -1}),
        }
        assert ours == published

    def test_round_trip_exact(self):
        rng = random.Random(31)
        count = 0
        while count < 25:
            n = rng.randint(1, 6)
            b = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
            dense = [[sum(b[i][k] * b[j][k] for k in range(n)) for j in range(n)] for i in range(n)]
            a = SymMatrix.from_rows(dense)
            result = ldl_psd(a)
            assert isinstance(result, LdlDecomposition)
            assert reconstruct(result, n) == [[a.entry(i, j) for j in range(n)] for i in range(n)]
            count += 1

    def test_soundness_and_completeness_fuzz(self):
        # 500 random symmetric rational matrices, cross-checked against the
        # independent characteristic-polynomial sign oracle.
        rng = random.Random(1234)
        agreements = {"psd": 0, "not_psd": 0}
        for _ in range(500):
            n = rng.randint(1, 8)
            if rng.random() < 0.5:
                a = random_rational_symmatrix(rng, n)
            else:
                # bias towards PSD instances: B^T B
                b = [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)] for _ in range(n)]
                dense = [[sum(b[k][i] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
                a = SymMatrix.from_rows(dense)
            result = ldl_psd(a)
            oracle = charpoly_psd_oracle(a)
            if isinstance(result, LdlDecomposition):
                assert oracle, f"ldl accepted a non-PSD matrix: {a.entries}"
                agreements["psd"] += 1
            else:
                assert not oracle, f"ldl rejected a PSD matrix: {a.entries}"
                # witness must be exact rational evidence
                av = a.matvec(result.vector)
                assert sum(x * y for x, y in zip(result.vector, av)) == result.value < 0
                agreements["not_psd"] += 1
        assert agreements["psd"] > 100 and agreements["not_psd"] > 100

    def test_completeness_on_gram_products(self):
        rng = random.Random(77)
        for _ in range(100):
            n = rng.randint(1, 8)
            b = [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]
            dense = [[sum(b[k][i] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
            assert isinstance(ldl_psd(SymMatrix.from_rows(dense)), LdlDecomposition)

    def test_rejects_float_matrix(self):
        with pytest.raises(ValueError):
            ldl_psd(SymMatrix(2, [1.0, 0.0, 1.0]))


class TestExtractCertificate:
    def test_reference_six_squares(self):
        cert = extract_certificate(h21_h111_gram(), build_basis(3, 3))
        assert len(cert.squares) == 6
        assert cert.target == h21_h111_squared()
        assert verify_certificate(cert).passed

    def test_rank_one_matrix_single_square(self):
        basis = build_basis(2, 1)  # (x1, x2)
        v = [Fraction(2), Fraction(-3)]
        dense = [[v[i] * v[j] for j in range(2)] for i in range(2)]
        cert = extract_certificate(SymMatrix.from_rows(dense), basis)
        assert len(cert.squares) == 1
        coeff, poly = cert.squares[0]
        assert (poly * poly).scale(coeff) == SparsePoly(2, {(2, 0): 4, (1, 1): -12, (0, 2): 9})

    def test_square_count_equals_exact_rank(self):
        rng = random.Random(5)
        basis = build_basis(2, 2)
        for _ in range(20):
            n = len(basis)
            cols = rng.randint(1, n)
            b = [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(cols)] for _ in range(n)]
            dense = [[sum(b[i][k] * b[j][k] for k in range(cols)) for j in range(n)] for i in range(n)]
            a = SymMatrix.from_rows(dense)
            cert = extract_certificate(a, basis)
            assert len(cert.squares) == exact_rank(dense)
            assert verify_certificate(cert).passed

    def test_not_psd_matrix_rejected(self):
        basis = build_basis(2, 1)
        bad = SymMatrix.from_rows([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]])
        with pytest.raises(CertificationError, match="not PSD"):
            extract_certificate(bad, basis)


class TestVerifyCertificate:
    def test_published_binomial_decomposition(self):
        assert verify_certificate(agm_sextic_binomial_certificate()).passed

    def test_published_trinomial_decomposition(self):
        assert verify_certificate(agm_sextic_trinomial_certificate()).passed

    def test_published_ldl_decomposition(self):
        assert verify_certificate(agm_sextic_ldl_certificate()).passed

    def test_tampered_coefficient_fails_and_reports_monomials(self):
        cert = agm_sextic_binomial_certificate()
        tampered_squares = list(cert.squares)
        coeff, poly = tampered_squares[0]
        tampered_squares[0] = (coeff + Fraction(1, 10**6), poly)
        tampered = SosCertificate(cert.target, tuple(tampered_squares), cert.gram, cert.permutation)
        report = verify_certificate(tampered)
        assert not report.passed
        assert not report.sum_matches
        assert len(report.mismatched_monomials) > 0
        assert "offending" in str(report)

    def test_nonpositive_coefficient_fails(self):
        target = SparsePoly(1, {(2,): -1})
        cert = SosCertificate(
            target,
            ((Fraction(-1), SparsePoly(1, {(1,): 1})),),
            SymMatrix(1, [Fraction(-1)]),
            (0,),
        )
        report = verify_certificate(cert)
        assert not report.passed
        assert not report.coefficients_positive

    def test_trivial_zero_certificate(self):
        cert = certificate_from_squares(SparsePoly.zero(3), [])
        assert verify_certificate(cert).passed
        assert cert.gram.n == 0


class TestCertificateJson:
    def test_round_trip(self):
        cert = extract_certificate(h21_h111_gram(), build_basis(3, 3))
        obj = certificate_to_json_obj(cert)
        back = certificate_from_json_obj(obj)
        assert back.target == cert.target
        assert back.squares == cert.squares
        assert back.gram == cert.gram
        assert verify_certificate(back).passed

    def test_schema_fields(self):
        cert = agm_sextic_binomial_certificate()
        obj = certificate_to_json_obj(cert)
        assert set(obj) == {"target", "squares", "gram", "meta"}
        assert obj["gram"]["dim"] == cert.gram.n
        assert obj["meta"]["nvars"] == 3
        assert "tool-version" in obj["meta"]
        import json
        json.dumps(obj)

    def test_zero_certificate_round_trip(self):
        cert = certificate_from_squares(SparsePoly.zero(3), [], {"nvars": 3})
        back = certificate_from_json_obj(certificate_to_json_obj(cert))
        assert back.target.is_zero()
        assert back.target.nvars == 3


class TestMatrixFileFormat:
    def test_round_trip(self):
        a = h21_h111_gram()
        assert SymMatrix.from_text(a.to_text()) == a

    def test_header_is_dimension(self):
        text = h21_h111_gram().to_text()
        assert text.splitlines()[0] == "10"
        assert len(text.split()) == 1 + 55

    def test_malformed_rejected(self):
        with pytest.raises(ValueError):
            SymMatrix.from_text("3\n1/1 2/1")


class TestCheckGramMatrix:
    def test_reference_matrix_passes(self):
        report = check_gram_matrix(h21_h111_gram(), h21_h111_squared())
        assert report.passed
        names = [n for n, _, _ in report.checks]
        assert names == [
            "dimension", "symmetry", "permutation-invariance",
            "kernel-at-sign-zeros", "reconstruction", "positive-semidefinite",
        ]

    def test_zeroed_corner_fails_reconstruction(self):
        a = h21_h111_gram()
        entries = list(a.entries)
        entries[0] = Fraction(0)  # kill the x1^3 x 1^3 entry
        broken = SymMatrix(a.n, entries)
        report = check_gram_matrix(broken, h21_h111_squared())
        assert not report.passed
        failures = {n: d for n, ok, d in report.checks if not ok}
        assert "reconstruction" in failures
        assert "(6, 0, 0)" in failures["reconstruction"]

    def test_wrong_dimension_fails(self):
        report = check_gram_matrix(SymMatrix(2, [Fraction(1), Fraction(0), Fraction(1)]),
                                   h21_h111_squared())
        assert not report.passed
