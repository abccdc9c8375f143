"""States, measurements, observables, correlation tables, worked examples."""

import numpy as np
import pytest

from bellcert.errors import (
    BadParams,
    DimMismatch,
    InvalidMeasurement,
    NotOrderL,
    TooLarge,
)
from bellcert.strategies import (
    CorrelationTable,
    ProjectiveMeasurement,
    SchmidtState,
    Strategy,
    brute_force_correlation,
    correlation,
    correlation_table,
    generalized_observables,
    povm_from_observable,
    require_binary_observable,
    verify_cheating_povm,
    verify_degenerate_pair,
)
from bellcert.simplex import degenerate_pair_3d, initial_strategy

from helpers import (
    X,
    Z,
    random_projective_measurement,
    random_reflection,
    random_schmidt_coeffs,
)


class TestSchmidtState:
    def test_normalization_enforced(self):
        with pytest.raises(BadParams):
            SchmidtState(np.array([1.0, 1.0]))

    def test_positive_coefficients_required(self):
        with pytest.raises(BadParams):
            SchmidtState(np.array([1.0, 0.0]))

    def test_maximally_entangled_values(self):
        st = SchmidtState.maximally_entangled(4)
        assert st.dim == 4
        assert np.allclose(st.coeffs, 0.5)
        assert st.kappa == pytest.approx(1.0)

    def test_kappa_is_ratio_of_extremes(self):
        st = SchmidtState(np.array([0.8, 0.6]))
        assert st.kappa == pytest.approx(0.8 / 0.6)

    def test_matrix_is_diagonal(self):
        st = SchmidtState(np.array([0.8, 0.6]))
        assert np.allclose(st.matrix, np.diag([0.8, 0.6]))


class TestProjectiveMeasurement:
    def test_valid_binary_measurement(self):
        m = ProjectiveMeasurement.from_observable(X)
        assert m.outputs == 2
        assert m.dim == 2
        assert np.allclose(m.observable(), X)

    def test_completeness_enforced(self):
        p = np.diag([1.0, 0.0])
        with pytest.raises(InvalidMeasurement):
            ProjectiveMeasurement((p, p))

    def test_idempotence_enforced(self):
        almost = np.array([[0.6, 0.2], [0.2, 0.4]])
        with pytest.raises(InvalidMeasurement):
            ProjectiveMeasurement((almost, np.eye(2) - almost))

    def test_orthogonality_enforced(self):
        v = np.array([1.0, 0.0])
        w = np.array([np.cos(0.3), np.sin(0.3)])
        with pytest.raises(InvalidMeasurement):
            ProjectiveMeasurement((np.outer(v, v), np.outer(w, w)))

    def test_observable_requires_two_outputs(self, rng):
        projs = random_projective_measurement(rng, 3, 3)
        m = ProjectiveMeasurement(tuple(projs))
        with pytest.raises(InvalidMeasurement):
            m.observable()

    def test_random_measurements_validate(self, rng):
        for d, outputs in [(2, 2), (4, 2), (4, 3), (5, 5)]:
            projs = random_projective_measurement(rng, d, outputs)
            m = ProjectiveMeasurement(tuple(projs))
            assert m.dim == d and m.outputs == outputs


class TestGeneralizedObservables:
    def test_binary_stays_real(self):
        m = ProjectiveMeasurement.from_observable(Z)
        obs = generalized_observables(m)
        assert len(obs) == 2
        assert not np.iscomplexobj(obs[0]) and not np.iscomplexobj(obs[1])
        assert np.allclose(obs[0], np.eye(2))
        assert np.allclose(obs[1], Z)

    def test_fourier_relations(self, rng):
        for outputs in (3, 4):
            projs = random_projective_measurement(rng, 5, outputs)
            m = ProjectiveMeasurement(tuple(projs))
            obs = generalized_observables(m)
            assert np.allclose(obs[0], np.eye(5))
            a = obs[1]
            # unitarity, order, and the power structure A^(j) = A^j
            assert np.max(np.abs(a @ a.conj().T - np.eye(5))) < 1e-12
            power = np.eye(5, dtype=complex)
            for j in range(outputs):
                assert np.max(np.abs(obs[j] - power)) < 1e-12 if j else True
                power = power @ a
            assert np.max(np.abs(power - np.eye(5))) < 1e-12

    def test_inverse_fourier_recovers_projections(self, rng):
        for outputs in (2, 3, 4):
            projs = random_projective_measurement(rng, 4, outputs)
            m = ProjectiveMeasurement(tuple(projs))
            a = generalized_observables(m)[1]
            m2 = povm_from_observable(a, outputs)
            for p, q in zip(m.projections, m2.projections):
                assert np.max(np.abs(p - q)) < 1e-10

    def test_povm_from_observable_checks_order(self):
        with pytest.raises(NotOrderL):
            povm_from_observable(Z, 3)  # Z has order 2, not 3
        with pytest.raises(NotOrderL):
            povm_from_observable(0.5 * X, 2)  # not unitary

    def test_require_binary_observable(self):
        assert np.allclose(require_binary_observable(X), X)
        with pytest.raises(InvalidMeasurement):
            require_binary_observable(0.9 * X)


class TestCorrelation:
    def test_closed_form_two_dimensional(self):
        # <psi|A (x) B|psi> for D = diag(c, s): Tr[D A D B^T]
        c, s = 0.8, 0.6
        st = SchmidtState(np.array([c, s]))
        assert correlation(st, X, X) == pytest.approx(2 * c * s)
        assert correlation(st, Z, Z) == pytest.approx(1.0)
        assert correlation(st, X, Z) == pytest.approx(0.0)
        assert correlation(st, Z, np.eye(2)) == pytest.approx(c * c - s * s)

    def test_maximally_entangled_is_normalized_trace(self, rng):
        st = SchmidtState.maximally_entangled(4)
        a = random_reflection(rng, 4)
        b = random_reflection(rng, 4)
        assert correlation(st, a, b) == pytest.approx(np.trace(a @ b.T) / 4.0)

    def test_table_matches_brute_force_on_random_strategies(self, rng):
        worst = 0.0
        for _ in range(8):
            d = int(rng.integers(2, 5))
            outputs = int(rng.integers(2, 4))
            st = SchmidtState(random_schmidt_coeffs(rng, d))
            alice = tuple(
                ProjectiveMeasurement(tuple(random_projective_measurement(rng, d, outputs)))
                for _ in range(2)
            )
            bob = tuple(
                ProjectiveMeasurement(tuple(random_projective_measurement(rng, d, 2)))
                for _ in range(2)
            )
            strat = Strategy(state=st, alice=alice, bob=bob)
            worst = max(
                worst,
                correlation_table(strat).max_difference(brute_force_correlation(strat)),
            )
        assert worst < 1e-12

    def test_brute_force_guards_size(self):
        d = 100
        reflection = np.eye(d) - 2.0 * np.diag([1.0] + [0.0] * (d - 1))
        m = ProjectiveMeasurement.from_observable(reflection)
        strat = Strategy(
            state=SchmidtState.maximally_entangled(d), alice=(m,), bob=(m,)
        )
        with pytest.raises(TooLarge):
            brute_force_correlation(strat)

    def test_table_entries_and_validation(self):
        strat = initial_strategy(3)
        table = correlation_table(strat)
        # (d+1)^2 question pairs, 2x2 outputs each -> j,k in {0,1}
        assert len(table) == 16 * 4
        table.validate()
        assert table.is_real()
        # identity components: j = 0 or k = 0 entries are exactly 1
        assert table[(0, 0, 3, 0)] == pytest.approx(1.0)
        # distinct simplex questions at maximal entanglement: Tr[T_j T_k]/d
        assert complex(table[(1, 1, 2, 1)]).real == pytest.approx(-5.0 / 27.0)

    def test_validate_rejects_bad_mass(self):
        t = CorrelationTable(entries={(0, 0, 0, 0): complex(2.0)})
        with pytest.raises(BadParams):
            t.validate()

    def test_max_difference_requires_matching_keys(self):
        t1 = CorrelationTable(entries={(0, 0, 0, 0): complex(1.0)})
        t2 = CorrelationTable(entries={(0, 1, 0, 0): complex(1.0)})
        with pytest.raises(DimMismatch):
            t1.max_difference(t2)


class TestDegenerateExample:
    def test_pair_verifies(self):
        state, refs, first, second = degenerate_pair_3d()
        report = verify_degenerate_pair(state, refs, first, second)
        assert report.degenerate
        assert report.correlation_gap < 1e-12
        assert report.distinctness == pytest.approx(np.sqrt(6.0), abs=1e-12)
        assert report.centralizer_trivial

    def test_pair_members_are_involutions(self):
        _, _, first, second = degenerate_pair_3d()
        for o in (first, second):
            assert np.max(np.abs(o @ o - np.eye(3))) < 1e-12

    def test_perturbed_pair_is_not_degenerate(self):
        state, refs, first, second = degenerate_pair_3d()
        vals, vecs = np.linalg.eigh(second)
        rot = vecs @ np.diag(np.sign(vals)) @ vecs.T
        # nudge the second observable off the coincidence surface
        theta = 1e-3
        c, s = np.cos(theta), np.sin(theta)
        g = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
        report = verify_degenerate_pair(state, refs, first, g @ rot @ g.T)
        assert not report.degenerate


class TestCheatingExample:
    def test_report_is_valid(self):
        rep = verify_cheating_povm()
        assert rep.valid
        assert rep.completeness_residual < 1e-12
        # one dishonest effect is exactly rank one, so the smallest
        # eigenvalue sits at zero up to rounding
        assert rep.min_eigenvalue > -1e-12
        assert rep.correlation_gap < 1e-12
        # the dishonest effects are genuinely non-projective
        assert rep.projection_defect > 0.1
        assert rep.overlap == pytest.approx((10.0 * np.sqrt(2.0) - 9.0) / 48.0, abs=1e-14)
