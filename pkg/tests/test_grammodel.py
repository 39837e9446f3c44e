"""Gram model construction: bases, orbits, kernel vectors, parametrization."""

import itertools
import random
from fractions import Fraction

import pytest

from helpers import exact_rank
from symsos.fixtures import h21_h111_gram, h21_h111_squared
from symsos.grammodel import (
    InfeasibleModelError,
    basis_permutation,
    build_basis,
    build_model,
    default_sign_zeros,
    kernel_vectors_from_zeros,
    symmetry_orbits,
)
from symsos.certify import gram_to_poly
from symsos.polyring import SparsePoly


def _small_target():
    return h21_h111_squared()


def _quartic_target():
    # (x1^2 + x2^2)^2
    p = SparsePoly(2, {(2, 0): 1, (0, 2): 1})
    return p * p


class TestBuildBasis:
    def test_degree3_three_vars_matches_reference_order(self):
        basis = build_basis(3, 3)
        assert [m for m in basis.monomials] == [
            (3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1),
            (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3),
        ]

    def test_degree8_three_vars_size(self):
        assert len(build_basis(3, 8)) == 45

    def test_single_variable(self):
        basis = build_basis(1, 5)
        assert basis.monomials == ((5,),)

    def test_sizes_match_binomials(self):
        import math
        for n in (1, 2, 3, 4):
            for d in range(0, 6):
                assert len(build_basis(n, d)) == math.comb(n + d - 1, d)


def orbit_oracle(basis):
    """Independent orbit computation: repeatedly apply all permutations."""
    n = len(basis)
    perms = [basis_permutation(basis, p) for p in itertools.permutations(range(basis.nvars))]
    positions = [(i, j) for i in range(n) for j in range(i, n)]
    orbits = []
    seen = set()
    for pos in positions:
        if pos in seen:
            continue
        frontier = {pos}
        orbit = set()
        while frontier:
            nxt = set()
            for (i, j) in frontier:
                orbit.add((i, j))
                for sigma in perms:
                    a, b = sigma[i], sigma[j]
                    image = (a, b) if a <= b else (b, a)
                    if image not in orbit:
                        nxt.add(image)
            frontier = nxt - orbit
        seen |= orbit
        orbits.append(frozenset(orbit))
    return set(orbits)


class TestSymmetryOrbits:
    def test_linear_basis_three_vars_has_two_orbits(self):
        orbits = symmetry_orbits(build_basis(3, 1))
        assert len(orbits) == 2
        sizes = sorted(len(o.members) for o in orbits)
        assert sizes == [3, 3]  # diagonal and off-diagonal

    def test_two_vars_degree_two_exact_orbits(self):
        orbits = symmetry_orbits(build_basis(2, 2))
        member_sets = {frozenset(o.members) for o in orbits}
        assert member_sets == {
            frozenset({(0, 0), (2, 2)}),
            frozenset({(0, 1), (1, 2)}),
            frozenset({(0, 2)}),
            frozenset({(1, 1)}),
        }

    def test_matches_oracle(self):
        for n, d in [(2, 2), (3, 1), (3, 2), (3, 3), (4, 2)]:
            basis = build_basis(n, d)
            expected = orbit_oracle(basis)
            got = {frozenset(o.members) for o in symmetry_orbits(basis)}
            assert got == expected

    def test_orbits_partition_positions(self):
        for n, d in [(2, 3), (3, 3), (3, 4)]:
            basis = build_basis(n, d)
            orbits = symmetry_orbits(basis)
            total = sum(len(o.members) for o in orbits)
            size = len(basis)
            assert total == size * (size + 1) // 2
            all_members = [m for o in orbits for m in o.members]
            assert len(all_members) == len(set(all_members))

    def test_reference_matrix_constant_on_orbits(self):
        basis = build_basis(3, 3)
        a = h21_h111_gram()
        for orbit in symmetry_orbits(basis):
            values = {a.entry(i, j) for (i, j) in orbit.members}
            assert len(values) == 1
        # positions (1,4) and (1,6) of the printed matrix, zero-based (0,3), (0,5)
        assert a.entry(0, 3) == a.entry(0, 5) == Fraction(-1, 108)
        orbit_of = {}
        for orbit in symmetry_orbits(basis):
            for m in orbit.members:
                orbit_of[m] = orbit.representative
        assert orbit_of[(0, 3)] == orbit_of[(0, 5)]


class TestKernelVectors:
    def test_flagship_sign_patterns_give_four_independent_vectors(self):
        from symsos.symfunc import BasisKind, Partition, normalized_difference

        target = normalized_difference(
            BasisKind.HOMOGENEOUS, Partition([4, 4]), Partition([5, 2, 1]), 3
        ).substitute_squares()
        basis = build_basis(3, 8)
        vectors = kernel_vectors_from_zeros(basis, target, default_sign_zeros(3))
        assert len(vectors) == 4
        assert exact_rank(vectors) == 4

    def test_all_ones_point_gives_all_ones_vector(self):
        basis = build_basis(3, 3)
        vectors = kernel_vectors_from_zeros(basis, _small_target(), [(1, 1, 1)])
        assert vectors == [[Fraction(1)] * 10]

    def test_non_zero_point_rejected(self):
        basis = build_basis(3, 3)
        with pytest.raises(ValueError, match="not a zero"):
            kernel_vectors_from_zeros(basis, _small_target(), [(1, 2, 3)])

    def test_origin_rejected(self):
        basis = build_basis(3, 3)
        with pytest.raises(ValueError, match="origin"):
            kernel_vectors_from_zeros(basis, _small_target(), [(0, 0, 0)])

    def test_duplicates_removed(self):
        basis = build_basis(3, 3)
        vectors = kernel_vectors_from_zeros(
            basis, _small_target(), [(1, 1, 1), (1, 1, 1), (2, 2, 2)]
        )
        # (2,2,2) is proportional to (1,1,1) only in the monomial vector sense
        # when the basis degree is uniform: m(2x) = 2^d m(x).
        assert len(vectors) == 1

    def test_full_rank_property(self):
        from symsos.symfunc import BasisKind, Partition, normalized_difference

        for mu_parts, lam_parts in [((2, 1), (1, 1, 1)), ((3,), (1, 1, 1)), ((2, 2), (3, 1))]:
            target = normalized_difference(
                BasisKind.HOMOGENEOUS, Partition(mu_parts), Partition(lam_parts), 3
            ).substitute_squares()
            basis = build_basis(3, target.homogeneous_degree() // 2)
            vectors = kernel_vectors_from_zeros(basis, target, default_sign_zeros(3))
            assert exact_rank(vectors) == len(vectors)


def random_free_values(rng, count):
    return [Fraction(rng.randint(-8, 8), rng.randint(1, 6)) for _ in range(count)]


class TestBuildModel:
    def test_small_model_parametrization_invariants(self):
        target = _small_target()
        model = build_model(target, use_symmetry=True, zeros=default_sign_zeros(3))
        rng = random.Random(0)
        basis = model.basis
        perms = [basis_permutation(basis, p) for p in itertools.permutations(range(3))]
        for _ in range(50):
            a = model.instantiate(random_free_values(rng, len(model.free_params)))
            assert gram_to_poly(a, basis) == target
            for sigma in perms:
                for i in range(a.n):
                    for j in range(i, a.n):
                        assert a.entry(sigma[i], sigma[j]) == a.entry(i, j)
            for vec in model.kernel_vectors:
                assert all(v == 0 for v in a.matvec(vec))

    def test_no_symmetry_reconstruction(self):
        target = _quartic_target()
        model = build_model(target, use_symmetry=False)
        rng = random.Random(1)
        for _ in range(50):
            a = model.instantiate(random_free_values(rng, len(model.free_params)))
            assert gram_to_poly(a, model.basis) == target

    def test_identity_gram_is_an_instantiation(self):
        # (x1^2+x2^2)^2 admits the Gram matrix with 1s on the (x1^2, x2^2)
        # diagonal and symmetric 1s on the cross entry.
        target = _quartic_target()
        model = build_model(target, use_symmetry=False)
        # basis order: x1^2, x1x2, x2^2 -> entries (0,0)=1, (0,2)=1, (2,2)=1
        found = False
        rng = random.Random(2)
        for _ in range(200):
            a = model.instantiate(random_free_values(rng, len(model.free_params)))
            if (
                a.entry(0, 0) == 1 and a.entry(2, 2) == 1 and a.entry(0, 2) == 1
                and a.entry(1, 1) == 0 and a.entry(0, 1) == 0 and a.entry(1, 2) == 0
            ):
                found = True
                break
        # The identity-style Gram corresponds to one specific free value; hit
        # it directly instead of sampling: solve for it via the single entry.
        if not found:
            for guess in [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(-2)]:
                a = model.instantiate([guess] * len(model.free_params))
                if a.entry(0, 2) == 1 and a.entry(1, 1) == 0:
                    found = True
                    break
        assert found

    def test_reference_matrix_is_reachable(self):
        target = _small_target()
        model = build_model(target, use_symmetry=True, zeros=default_sign_zeros(3))
        reference = h21_h111_gram()
        # Free parameters are orbit variables; read their values off the
        # reference matrix at the orbit representatives.
        free_values = []
        for var in model.free_params:
            i, j = model.orbits[var].representative
            free_values.append(Fraction(reference.entry(i, j)))
        assert model.instantiate(free_values) == reference

    def test_symmetry_on_off_same_target(self):
        target = _small_target()
        with_sym = build_model(target, use_symmetry=True)
        without = build_model(target, use_symmetry=False)
        rng = random.Random(3)
        a = with_sym.instantiate(random_free_values(rng, len(with_sym.free_params)))
        b = without.instantiate(random_free_values(rng, len(without.free_params)))
        assert gram_to_poly(a, with_sym.basis) == gram_to_poly(b, without.basis) == target

    def test_free_parameter_count_flagship(self):
        from symsos.symfunc import BasisKind, Partition, normalized_difference

        target = normalized_difference(
            BasisKind.HOMOGENEOUS, Partition([4, 4]), Partition([5, 2, 1]), 3
        ).substitute_squares()
        model = build_model(target, use_symmetry=True, zeros=default_sign_zeros(3))
        assert len(model.basis) == 45
        assert model.num_kernel_vectors == 4
        # Matches the affine dimension reported for this feasibility problem.
        assert len(model.free_params) == 129

    def test_perturbing_free_value_changes_matrix_not_target(self):
        target = _small_target()
        model = build_model(target, use_symmetry=True, zeros=default_sign_zeros(3))
        assert len(model.free_params) >= 1
        base = [Fraction(0)] * len(model.free_params)
        bumped = list(base)
        bumped[0] += 1
        a0, a1 = model.instantiate(base), model.instantiate(bumped)
        assert a0 != a1
        assert gram_to_poly(a0, model.basis) == gram_to_poly(a1, model.basis) == target

    def test_simple_zero_makes_model_infeasible(self):
        # x1^4 - x1^3 x2 vanishes to first order at (1, 1); the gradient
        # there is nonzero, so no Gram matrix can annihilate m(1, 1).
        target = SparsePoly(2, {(4, 0): 1, (3, 1): -1})
        assert target.eval([1, 1]) == 0
        with pytest.raises(InfeasibleModelError):
            build_model(target, use_symmetry=False, zeros=[(1, 1)])

    def test_rejects_inhomogeneous(self):
        with pytest.raises(ValueError, match="homogeneous"):
            build_model(SparsePoly(2, {(2, 0): 1, (1, 0): 1}))

    def test_rejects_odd_degree(self):
        with pytest.raises(ValueError, match="odd"):
            build_model(SparsePoly(2, {(3, 0): 1}))

    def test_rejects_asymmetric_with_symmetry_on(self):
        with pytest.raises(ValueError, match="not symmetric"):
            build_model(SparsePoly(2, {(2, 0): 1}), use_symmetry=True)

    def test_zero_target_rejected(self):
        with pytest.raises(ValueError, match="zero"):
            build_model(SparsePoly.zero(2))

    def test_wrong_free_value_count(self):
        model = build_model(_quartic_target(), use_symmetry=False)
        with pytest.raises(ValueError, match="free values"):
            model.instantiate([Fraction(0)] * (len(model.free_params) + 1))

    def test_debug_dump_shape(self):
        model = build_model(_small_target(), use_symmetry=True, zeros=default_sign_zeros(3))
        dump = model.debug_dump()
        assert dump["basis_size"] == 10
        assert dump["kernel_vector_count"] == 4
        assert dump["free_parameter_count"] == len(model.free_params)
        assert len(dump["orbit_representatives"]) == len(model.orbits)
        import json
        json.dumps(dump)
