"""End-to-end certification outcomes for representative pair classes."""

from fractions import Fraction

import pytest

from symsos.certify import verify_certificate
from symsos.fixtures import h44_h521_squared
from symsos.pipeline import PipelineStatus, certify_difference
from symsos.rationalize import RoundingConfig
from symsos.symfunc import Partition


class TestCertifyDifference:
    def test_equal_partitions_trivial(self):
        out = certify_difference(Partition([3, 1]), Partition([3, 1]), 3)
        assert out.status is PipelineStatus.TRIVIAL_ZERO
        assert out.certificate is not None
        assert len(out.certificate.squares) == 0
        assert verify_certificate(out.certificate).passed

    def test_dominating_pair_exact(self):
        out = certify_difference(Partition([3]), Partition([1, 1, 1]), 3)
        assert out.status is PipelineStatus.EXACT
        assert verify_certificate(out.certificate).passed
        assert out.certificate.meta["mu"] == "3"

    def test_reversed_pair_infeasible(self):
        out = certify_difference(Partition([1, 1, 1]), Partition([3]), 3)
        assert out.status is PipelineStatus.INFEASIBLE_SUSPECTED
        assert out.certificate is None

    def test_flagship_counterexample(self):
        out = certify_difference(Partition([4, 4]), Partition([5, 2, 1]), 3)
        assert out.status is PipelineStatus.EXACT
        assert out.target == h44_h521_squared()
        assert out.certificate.target == h44_h521_squared()
        assert len(out.certificate.squares) <= 45
        assert verify_certificate(out.certificate).passed
        # The produced 45x45 matrix passes the full independent matrix check
        # (permutation invariance, kernel conditions, reconstruction, PSD).
        from symsos.certify import check_gram_matrix

        report = check_gram_matrix(out.matrix, out.target)
        assert report.passed, str(report)

    def test_extra_zero_must_be_a_zero(self):
        with pytest.raises(ValueError, match="not a zero"):
            certify_difference(
                Partition([2, 1]), Partition([1, 1, 1]), 3,
                extra_zeros=[(Fraction(1), Fraction(2), Fraction(3))],
            )

    def test_two_variables_small_case(self):
        # (H2 - H11)(x^2) in two variables is SOS as well.
        out = certify_difference(Partition([2]), Partition([1, 1]), 2)
        assert out.status is PipelineStatus.EXACT
        assert verify_certificate(out.certificate).passed

    def test_rounding_budget_respected(self):
        # A one-shot rounding budget still succeeds on the small case at 150.
        out = certify_difference(
            Partition([2, 1]), Partition([1, 1, 1]), 3,
            rounding_config=RoundingConfig(denominator_bound=150, max_escalations=0),
        )
        assert out.status is PipelineStatus.EXACT
