import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from jmvcc.errors import DimensionError, DomainError
from jmvcc.matcore import as_nonneg, frobenius_sq, hadamard_update, matmul

# squares of differences below ~1e-160 underflow to 0
nonneg = st.one_of(st.just(0.0), st.floats(1e-100, 1e3))


def nonneg_matrix(shape):
    return arrays(np.float64, shape, elements=nonneg)


class TestFrobenius:
    def test_against_zero(self):
        assert frobenius_sq([[1, 2], [2, 0]], 0) == 9.0

    def test_identity_case(self, rng):
        A = rng.random((4, 3))
        assert frobenius_sq(A, A.copy()) == 0.0

    def test_scalar_loop_oracle(self, rng):
        A, B = rng.random((3, 3)), rng.random((3, 3))
        ref = oracles.frob_sq(A, B)
        assert frobenius_sq(A, B) == pytest.approx(ref, rel=1e-12)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            frobenius_sq(np.ones((2, 2)), np.ones((2, 3)))

    @given(nonneg_matrix((3, 4)), nonneg_matrix((3, 4)))
    def test_symmetric_and_zero_iff_equal(self, A, B):
        d = frobenius_sq(A, B)
        assert d == frobenius_sq(B, A)
        assert d >= 0
        assert (d == 0) == np.array_equal(A, B)


class TestMatmul:
    def test_identity(self, rng):
        B = rng.random((2, 5))
        np.testing.assert_array_equal(matmul(np.eye(2), B), B)

    def test_dot_product(self):
        np.testing.assert_array_equal(matmul([[1, 1]], [[2], [3]]), [[5]])

    def test_triple_loop_oracle(self, rng):
        A, B = rng.random((4, 3)), rng.random((3, 5))
        np.testing.assert_allclose(matmul(A, B), oracles.matmul(A, B), rtol=1e-12)

    def test_mismatch(self):
        with pytest.raises(DimensionError):
            matmul(np.ones((2, 3)), np.ones((2, 3)))

    @given(nonneg_matrix((3, 2)), nonneg_matrix((2, 4)))
    def test_closure(self, A, B):
        assert (matmul(A, B) >= 0).all()


class TestHadamardUpdate:
    def test_fixed_point(self, rng):
        theta, num = rng.random((3, 3)), rng.random((3, 3)) + 0.1
        np.testing.assert_array_equal(hadamard_update(theta, num, num.copy(), 0.0), theta)

    def test_zero_absorption(self, rng):
        out = hadamard_update(np.zeros((2, 3)), rng.random((2, 3)), rng.random((2, 3)))
        np.testing.assert_array_equal(out, 0)

    def test_scalar(self):
        np.testing.assert_array_equal(hadamard_update([[2.0]], [[3.0]], [[1.0]], 0.0), [[6.0]])

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            hadamard_update(np.ones((2, 2)), np.ones((2, 2)), np.ones((1, 2)))

    @settings(max_examples=50)
    @given(nonneg_matrix((3, 3)), nonneg_matrix((3, 3)), nonneg_matrix((3, 3)))
    def test_closure(self, theta, num, den):
        out = hadamard_update(theta, num, den, 1e-9)
        assert (out >= 0).all()
        assert (out[theta == 0] == 0).all()

    @given(nonneg_matrix((2, 3)), nonneg_matrix((2, 3)))
    def test_equal_ratio_is_identity(self, theta, num):
        np.testing.assert_array_equal(hadamard_update(theta, num, num.copy(), 0.0), theta)


def test_as_nonneg_rejects():
    with pytest.raises(DomainError):
        as_nonneg([[1.0, -1.0]])
    with pytest.raises(DomainError):
        as_nonneg([[np.nan]])
    with pytest.raises(DimensionError):
        as_nonneg([1.0, 2.0])
