import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import hermitian_unit_trace
from src.errors import DimensionMismatchError, InvalidDimensionError
from src.operators import (
    anticommutator,
    commutator,
    embed_operator,
    frobenius_inner,
    hermitian_orthonormalize,
    real_vectorize,
    spin_operators,
    transition_op,
)


class TestSpinOperators:
    def test_spin_half_is_pauli_over_two(self):
        s = spin_operators(2)
        assert_allclose(s['Sz'], np.diag([0.5, -0.5]))
        assert_allclose(s['Sx'], [[0, 0.5], [0.5, 0]])

    def test_spin_one_ladder_coefficients(self):
        s = spin_operators(3)
        assert_allclose(s['Sz'], np.diag([1.0, 0.0, -1.0]))
        assert_allclose(np.diag(s['Splus'], k=1), [np.sqrt(2), np.sqrt(2)])
        assert_allclose(s['Sminus'], s['Splus'].conj().T)

    @pytest.mark.parametrize("dim", [2, 3, 4, 5, 6])
    def test_su2_commutation(self, dim):
        s = spin_operators(dim)
        assert_allclose(commutator(s['Sx'], s['Sy']), 1j * s['Sz'], atol=1e-12)

    @pytest.mark.parametrize("dim", [0, 1])
    def test_rejects_small_dimension(self, dim):
        with pytest.raises(InvalidDimensionError):
            spin_operators(dim)


class TestTransitionOperators:
    def test_projector(self):
        assert_allclose(transition_op(3, 1, 1), np.diag([1.0, 0.0, 0.0]))

    def test_single_unit_entry(self):
        op = transition_op(4, 2, 4)
        assert op[1, 3] == 1
        assert np.count_nonzero(op) == 1

    def test_out_of_range(self):
        with pytest.raises(InvalidDimensionError):
            transition_op(3, 0, 1)
        with pytest.raises(InvalidDimensionError):
            transition_op(3, 1, 4)


class TestProducts:
    def test_anticommutator_of_pauli(self):
        s = spin_operators(2)
        assert_allclose(anticommutator(s['Sx'], s['Sx']), 0.5 * np.eye(2))

    def test_frobenius_inner(self):
        s = spin_operators(2)
        assert frobenius_inner(s['Sx'], s['Sx']) == pytest.approx(0.5)
        assert frobenius_inner(s['Sx'], s['Sz']) == pytest.approx(0.0)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            commutator(np.eye(2), np.eye(3))


class TestOrthonormalize:
    def test_parallel_set_collapses(self):
        sx = spin_operators(2)['Sx']
        basis = hermitian_orthonormalize([sx, 2 * sx])
        assert len(basis) == 1
        assert frobenius_inner(basis[0], basis[0]).real == pytest.approx(1.0)

    def test_pauli_set_is_orthogonal(self):
        s = spin_operators(2)
        basis = hermitian_orthonormalize([s['Sx'], s['Sy'], s['Sz']])
        assert len(basis) == 3
        gram = np.array([[frobenius_inner(a, b).real for b in basis] for a in basis])
        assert_allclose(gram, np.eye(3), atol=1e-12)

    def test_empty(self):
        assert hermitian_orthonormalize([]) == []

    def test_idempotent(self, rng):
        first = hermitian_orthonormalize([hermitian_unit_trace(3, rng) for _ in range(4)])
        second = hermitian_orthonormalize(first)
        assert len(second) == len(first) == 4
        gram = np.array([[frobenius_inner(a, b).real for b in second] for a in second])
        assert_allclose(gram, np.eye(4), atol=1e-12)
        span = np.array([real_vectorize(op) for op in first])
        for op in second:
            vec = real_vectorize(op)
            assert_allclose(span.T @ (span @ vec), vec, atol=1e-12)

    def test_size_equals_rank(self, rng):
        base = [hermitian_unit_trace(3, rng) for _ in range(3)]
        operators = base + [base[0] - 2 * base[1], 0.5 * base[2] + base[0]]
        rank = np.linalg.matrix_rank(np.array([real_vectorize(op) for op in operators]))
        assert rank == 3
        assert len(hermitian_orthonormalize(operators)) == rank


class TestEmbedding:
    def test_block_lands_on_levels(self):
        sx = spin_operators(2)['Sx']
        full = embed_operator(sx, [2, 4], 4)
        assert full[1, 3] == pytest.approx(0.5)
        assert full[3, 1] == pytest.approx(0.5)
        assert np.count_nonzero(full) == 2

    def test_level_count_must_match(self):
        with pytest.raises(DimensionMismatchError):
            embed_operator(np.eye(2), [1, 2, 3], 4)
