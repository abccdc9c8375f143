"""Span bases, Jordan closures, cut points, centralizers, degeneracy counts."""

import numpy as np
import pytest

from bellcert.errors import DimMismatch, EmptyInput
from bellcert.jordan import (
    SpanBasis,
    contains,
    cut_point_observables,
    degeneracy_possible,
    has_trivial_centralizer,
    jordan_closure,
    jordan_product,
    span_basis,
)
from bellcert.simplex import simplex_observables

from helpers import X, Z, random_reflection, random_symmetric

EYE2 = np.eye(2)


class TestSpanBasis:
    def test_pauli_family_has_dimension_three(self):
        b = span_basis([EYE2, X, Z])
        assert b.dimension == 3

    def test_simplex_family_with_identity_has_dimension_four(self):
        # {I, T_0..T_3} in dimension 3: the identity is already a combination
        # of the four reflections, so the span has dimension 4, not 5
        mats = [np.eye(3)] + simplex_observables(3)
        b = span_basis(mats)
        assert b.dimension == 4

    def test_duplicates_do_not_inflate_dimension(self):
        b = span_basis([X, X, 2.0 * X, Z])
        assert b.dimension == 2

    def test_basis_is_orthonormal(self, rng):
        mats = [random_symmetric(rng, 4) for _ in range(5)]
        b = span_basis(mats)
        rows = b.rows()
        gram = rows @ rows.T
        assert np.max(np.abs(gram - np.eye(b.dimension))) < 1e-12

    def test_membership_and_coefficients(self, rng):
        mats = [random_symmetric(rng, 4) for _ in range(3)]
        b = span_basis(mats)
        combo = 0.7 * mats[0] - 1.3 * mats[1] + 0.25 * mats[2]
        member, coeffs, residual = contains(b, combo)
        assert member
        recon = sum(c * e for c, e in zip(coeffs, b.basis))
        assert np.max(np.abs(recon - combo)) < 1e-10
        assert residual < 1e-10

    def test_non_member_is_rejected(self, rng):
        b = span_basis([EYE2, Z])
        member, _, residual = contains(b, X)
        assert not member
        assert residual == pytest.approx(np.sqrt(2.0), abs=1e-12)

    def test_empty_family_raises(self):
        with pytest.raises(EmptyInput):
            span_basis([])

    def test_mixed_sizes_raise(self):
        with pytest.raises(DimMismatch):
            span_basis([EYE2, np.eye(3)])


class TestJordanProduct:
    def test_commuting_matrices_multiply(self):
        a = np.diag([1.0, 2.0])
        b = np.diag([3.0, -1.0])
        assert np.allclose(jordan_product(a, b), a @ b)

    def test_anticommuting_pair_vanishes(self):
        assert np.max(np.abs(jordan_product(X, Z))) == 0.0

    def test_result_is_symmetric(self, rng):
        a = random_symmetric(rng, 5)
        b = random_symmetric(rng, 5)
        p = jordan_product(a, b)
        assert np.max(np.abs(p - p.T)) < 1e-14


class TestJordanClosure:
    def test_single_observable_closes_to_its_own_span(self):
        basis, iterations = jordan_closure([Z])
        # Z * Z = I which is already seeded: nothing new ever appears
        assert basis.dimension == 2
        assert iterations == 0

    def test_pauli_pair_generates_full_symmetric_algebra(self):
        basis, iterations = jordan_closure([X, Z])
        # the seeds {I, X, Z} already span the full d = 2 symmetric algebra,
        # so the first product sweep finds nothing new
        assert basis.dimension == 3  # d(d+1)/2 at d = 2
        assert iterations == 0

    def test_simplex_family_closes_to_full_algebra(self):
        for d in (3, 4, 5):
            basis, iterations = jordan_closure(simplex_observables(d))
            assert basis.dimension == d * (d + 1) // 2
            assert iterations <= int(np.ceil(2.0 * np.log2(d)))

    def test_closure_contains_generators_and_identity(self, rng):
        gens = [random_reflection(rng, 4) for _ in range(2)]
        basis, _ = jordan_closure(gens)
        for m in [np.eye(4)] + gens:
            member, _, _ = contains(basis, m)
            assert member

    def test_extra_generators_merge_before_iterating(self):
        basis_plain, _ = jordan_closure([Z])
        basis_seeded, _ = jordan_closure([Z], extra_generators=[X])
        assert basis_plain.dimension == 2
        assert basis_seeded.dimension == 3

    def test_block_family_stays_reducible(self):
        # two commuting reflections sharing an eigenbasis: the closure is the
        # diagonal algebra, not the full symmetric space
        a = np.diag([1.0, -1.0, 1.0])
        b = np.diag([1.0, 1.0, -1.0])
        basis, _ = jordan_closure([a, b])
        assert basis.dimension == 3

    def test_iteration_count_bound_on_random_families(self, rng):
        for d in (3, 5, 8):
            cap = int(np.ceil(2.0 * np.log2(d)))
            for _ in range(5):
                gens = [random_reflection(rng, d) for _ in range(2)]
                _, iterations = jordan_closure(gens)
                assert iterations <= cap


class TestCutPointObservables:
    def test_distinct_eigenvalues_give_all_cuts(self):
        h = np.diag([3.0, 1.0, -2.0])
        cuts = cut_point_observables(h)
        assert len(cuts) == 2
        assert np.allclose(cuts[0], np.diag([1.0, -1.0, -1.0]))
        assert np.allclose(cuts[1], np.diag([1.0, 1.0, -1.0]))

    def test_identity_multiple_gives_no_cuts(self):
        assert cut_point_observables(2.5 * np.eye(3)) == []

    def test_clustered_eigenvalues_merge(self):
        h = np.diag([1.0, 1.0 + 1e-12, -1.0])
        cuts = cut_point_observables(h)
        assert len(cuts) == 1

    def test_cuts_are_involutions_in_rotated_basis(self, rng):
        h = random_symmetric(rng, 5)
        for o in cut_point_observables(h):
            assert np.max(np.abs(o @ o - np.eye(5))) < 1e-12
            assert np.max(np.abs(o - o.T)) < 1e-14

    def test_cut_commutes_with_input(self, rng):
        h = random_symmetric(rng, 4)
        for o in cut_point_observables(h):
            assert np.max(np.abs(o @ h - h @ o)) < 1e-12


class TestCentralizer:
    def test_full_pauli_family_is_irreducible(self):
        assert has_trivial_centralizer([X, Z])

    def test_single_diagonal_reflection_is_reducible(self):
        assert not has_trivial_centralizer([Z])

    def test_simplex_families_are_irreducible(self):
        for d in (3, 4, 6):
            assert has_trivial_centralizer(simplex_observables(d))

    def test_commuting_family_is_reducible(self):
        a = np.diag([1.0, -1.0, 1.0])
        b = np.diag([1.0, 1.0, -1.0])
        assert not has_trivial_centralizer([a, b])


class TestDegeneracyPossible:
    def test_documented_examples(self):
        assert degeneracy_possible(5, 4) is True
        assert degeneracy_possible(3, 4, maximally_entangled=True) is False
        assert degeneracy_possible(2, 1, maximally_entangled=True) is False

    def test_three_dimensional_pair_is_allowed_with_two_questions(self):
        # floor(9/4) = 2 > n exactly when n < 2; the known 3d example uses
        # 4 reference questions on a maximally entangled state and evades the
        # count only because its references are linearly dependent
        assert degeneracy_possible(3, 1, maximally_entangled=True)
        assert not degeneracy_possible(3, 2, maximally_entangled=True)

    def test_count_grows_quadratically(self):
        # floor(100/4) = 25 free fiber dimensions against n+1 constraints
        assert degeneracy_possible(10, 20)
        assert degeneracy_possible(10, 23)
        assert not degeneracy_possible(10, 24)
        assert not degeneracy_possible(10, 25)
