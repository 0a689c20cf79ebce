"""Tensor products: worked examples enumerated by hand plus algebraic laws."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import moment_tensors as mt
from moment_tensors.errors import GuardError, ShapeError


def delta_pattern(n, pairing):
    """Order-4 tensor with entry = product of Kronecker deltas over index pairs."""
    out = np.zeros((n,) * 4)
    for idx in np.ndindex(*(n,) * 4):
        value = 1.0
        for a, b in pairing:
            value *= 1.0 if idx[a] == idx[b] else 0.0
        out[idx] = value
    return out


def rng(seed=0):
    return np.random.default_rng(seed)


class TestOuterProduct:
    def test_identity_pair_patterns(self):
        # the two distinct placements of I x I on 4 modes
        eye = mt.DenseTensor(np.eye(2))
        c12 = mt.outer_product(eye, eye, (0, 1))
        c13 = mt.outer_product(eye, eye, (0, 2))
        np.testing.assert_array_equal(c12.array, delta_pattern(2, [(2, 3), (0, 1)]))
        np.testing.assert_array_equal(c13.array, delta_pattern(2, [(1, 3), (0, 2)]))

    def test_scalar_boundaries(self):
        one = mt.DenseTensor.scalar(1.0)
        b = mt.DenseTensor(rng().standard_normal((2, 3)))
        np.testing.assert_array_equal(mt.outer_product(one, b, (0, 1)).array, b.array)
        np.testing.assert_array_equal(mt.outer_product(b, one, ()).array, b.array)

    def test_vector_outer(self):
        x = mt.DenseTensor([1.0, 2.0])
        y = mt.DenseTensor([3.0, 5.0])
        c = mt.outer_product(x, y, (1,))
        np.testing.assert_array_equal(c.array, np.outer([1.0, 2.0], [3.0, 5.0]))
        # with T = {0} the second factor takes the first mode
        c_swapped = mt.outer_product(x, y, (0,))
        np.testing.assert_array_equal(c_swapped.array, np.outer([3.0, 5.0], [1.0, 2.0]))

    def test_complementary_mode_sets_agree_on_equal_factors(self):
        a = mt.DenseTensor(rng(3).standard_normal((3, 3)))
        for theta in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)):
            comp = tuple(i for i in range(4) if i not in theta)
            left = mt.outer_product(a, a, theta)
            right = mt.outer_product(a, a, comp)
            np.testing.assert_array_equal(left.array, right.array)

    def test_wrong_mode_count(self):
        a = mt.DenseTensor(np.eye(2))
        with pytest.raises(ShapeError):
            mt.outer_product(a, a, (0, 1, 2))
        with pytest.raises(ShapeError):
            mt.outer_product(a, a, (1, 0))  # not increasing


class TestOuterPower:
    def test_vector_square(self):
        t = mt.outer_power(np.array([1.0, 2.0]), 2)
        np.testing.assert_array_equal(t.array, [[1.0, 2.0], [2.0, 4.0]])

    def test_zero_vector(self):
        t = mt.outer_power(np.zeros(3), 4)
        assert not t.array.any()

    def test_ones_cube(self):
        t = mt.outer_power(np.ones(3), 3)
        np.testing.assert_array_equal(t.array, np.ones((3, 3, 3)))

    def test_matrix_power_mode_order(self):
        x = rng(1).standard_normal((2, 3))
        t = mt.outer_power(x, 2)
        assert t.extents == (2, 2, 3, 3)
        for i1, i2, j1, j2 in np.ndindex(2, 2, 3, 3):
            assert t.array[i1, i2, j1, j2] == x[i1, j1] * x[i2, j2]

    def test_bad_order(self):
        with pytest.raises(ShapeError):
            mt.outer_power(np.zeros((2, 2, 2)), 2)


class TestEinsteinProduct:
    def test_worked_example_order4(self):
        a = mt.DenseTensor(rng(2).standard_normal((2, 2, 2, 2)))
        b = mt.DenseTensor(rng(5).standard_normal((2, 2, 2, 2)))
        c = mt.einstein_product(a, b, (2, 3), (0, 1))
        expected = np.zeros((2, 2, 2, 2))
        for i1, i2, i3, i4 in np.ndindex(2, 2, 2, 2):
            expected[i1, i2, i3, i4] = sum(
                a.array[i1, i2, j1, j2] * b.array[j1, j2, i3, i4]
                for j1 in range(2)
                for j2 in range(2)
            )
        np.testing.assert_allclose(c.array, expected, rtol=0, atol=1e-14)

    def test_identity_tensor_is_neutral(self):
        ident = mt.identity_tensor4(3)
        b = mt.DenseTensor(rng(7).standard_normal((3, 3, 3, 3)))
        np.testing.assert_array_equal(
            mt.einstein_product(ident, b, (2, 3), (0, 1)).array, b.array
        )
        np.testing.assert_array_equal(
            mt.einstein_product(b, ident, (2, 3), (0, 1)).array, b.array
        )

    def test_inner_product(self):
        x = mt.DenseTensor([1.0, 2.0, 3.0])
        c = mt.einstein_product(x, x, (0,), (0,))
        assert c.order == 0
        assert float(c.array) == 14.0

    def test_errors(self):
        a = mt.DenseTensor(np.eye(2))
        b = mt.DenseTensor(np.eye(3))
        with pytest.raises(ShapeError):
            mt.einstein_product(a, b, (0,), (0,))
        with pytest.raises(ShapeError):
            mt.einstein_product(a, a, (), ())


class TestModeMultiplication:
    def test_right_identity(self):
        a = mt.DenseTensor(rng(0).standard_normal((3, 3)))
        np.testing.assert_array_equal(mt.k_mode_right(a, np.eye(3), 1).array, a.array)

    def test_right_scaling(self):
        a = mt.DenseTensor(np.ones((2, 2, 2)))
        out = mt.k_mode_right(a, 2.0 * np.eye(2), 2)
        np.testing.assert_array_equal(out.array, 2.0 * np.ones((2, 2, 2)))

    def test_right_permutation_case(self):
        # rank-1 basis tensor e1 (x) e1 (x) e1, swapped in mode 0 by the flip matrix
        a = np.zeros((2, 2, 2))
        a[0, 0, 0] = 1.0
        flip = np.array([[0.0, 1.0], [1.0, 0.0]])
        out = mt.k_mode_right(mt.DenseTensor(a), flip, 0)
        expected = np.zeros((2, 2, 2))
        expected[1, 0, 0] = 1.0
        np.testing.assert_array_equal(out.array, expected)

    def test_right_is_transposed_matrix_product(self):
        # literal contraction: mode-0 right multiplication of a matrix gives B^T A
        a = rng(4).standard_normal((3, 3))
        b = rng(5).standard_normal((3, 3))
        out = mt.k_mode_right(mt.DenseTensor(a), b, 0)
        np.testing.assert_allclose(out.array, b.T @ a, rtol=0, atol=1e-14)

    def test_left_identity(self):
        a = mt.DenseTensor(rng(1).standard_normal((2, 2, 2)))
        for mode in range(3):
            np.testing.assert_array_equal(mt.k_mode_left(np.eye(2), a, mode).array, a.array)

    def test_left_mode0_is_matrix_product(self):
        a = np.arange(6.0).reshape(2, 3)
        b = np.arange(4.0).reshape(2, 2)
        out = mt.k_mode_left(b, mt.DenseTensor(a), 0)
        np.testing.assert_array_equal(out.array, b @ a)

    def test_left_scaling(self):
        a = mt.DenseTensor(rng(2).standard_normal((2, 2)))
        out = mt.k_mode_left(2.0 * np.eye(2), a, 1)
        np.testing.assert_array_equal(out.array, 2.0 * a.array)

    def test_mode_out_of_range(self):
        a = mt.DenseTensor(np.eye(2))
        with pytest.raises(ShapeError):
            mt.k_mode_right(a, np.eye(2), 2)
        with pytest.raises(ShapeError):
            mt.k_mode_left(np.eye(3), a, 0)


class TestApplyAllModes:
    def test_identity(self):
        a = mt.DenseTensor(rng(3).standard_normal((2, 2, 2)))
        np.testing.assert_array_equal(mt.apply_all_modes(np.eye(2), a).array, a.array)

    def test_outer_power_transform(self):
        b = rng(6).standard_normal((3, 3))
        x = rng(7).standard_normal(3)
        lhs = mt.apply_all_modes(b, mt.outer_power(x, 3))
        rhs = mt.outer_power(b @ x, 3)
        np.testing.assert_allclose(lhs.array, rhs.array, rtol=1e-12, atol=1e-14)

    def test_homogeneity(self):
        a = mt.DenseTensor(rng(8).standard_normal((2, 2, 2)))
        out = mt.apply_all_modes(2.0 * np.eye(2), a)
        np.testing.assert_allclose(out.array, 8.0 * a.array, rtol=0, atol=0)

    def test_requires_cubic(self):
        a = mt.DenseTensor(np.ones((2, 3)))
        with pytest.raises(ShapeError):
            mt.apply_all_modes(np.eye(2), a)


class TestTensor4Algebra:
    def test_identity_laws(self):
        ident = mt.identity_tensor4(3)
        a = mt.DenseTensor(rng(9).standard_normal((3, 3, 3, 3)))
        np.testing.assert_array_equal(mt.tensor4_product(a, ident).array, a.array)
        np.testing.assert_array_equal(mt.tensor4_product(ident, a).array, a.array)

    def test_zero(self):
        zero = mt.DenseTensor.zeros((2, 2, 2, 2))
        a = mt.DenseTensor(rng(10).standard_normal((2, 2, 2, 2)))
        assert not mt.tensor4_product(zero, a).array.any()

    def test_associativity(self):
        gen = rng(11)
        a, b, c = (mt.DenseTensor(gen.random((3, 3, 3, 3))) for _ in range(3))
        left = mt.tensor4_product(mt.tensor4_product(a, b), c)
        right = mt.tensor4_product(a, mt.tensor4_product(b, c))
        np.testing.assert_allclose(left.array, right.array, rtol=0, atol=1e-12)

    def test_matches_einstein_product(self):
        a = mt.DenseTensor(rng(12).standard_normal((2, 2, 2, 2)))
        b = mt.DenseTensor(rng(13).standard_normal((2, 2, 2, 2)))
        np.testing.assert_array_equal(
            mt.tensor4_product(a, b).array,
            mt.einstein_product(a, b, (2, 3), (0, 1)).array,
        )

    def test_identity_tensor_entries(self):
        assert mt.identity_tensor4(1).array[0, 0, 0, 0] == 1.0
        t = mt.identity_tensor4(2)
        ones = [(i, j, i, j) for i in range(2) for j in range(2)]
        for idx in np.ndindex(2, 2, 2, 2):
            assert t.array[idx] == (1.0 if idx in ones else 0.0)


class TestPolynomialEvaluation:
    def test_quadratic_form(self):
        x = np.array([1.0, 2.0, 3.0])
        assert mt.poly_eval(mt.DenseTensor(np.eye(3)), x) == float(x @ x)

    def test_contract_matrix(self):
        a = np.array([[2.0, 1.0], [1.0, 3.0]])
        x = np.array([0.5, -1.0])
        np.testing.assert_allclose(
            mt.contract_to_vector(mt.DenseTensor(a), x).array, a @ x, atol=1e-15
        )

    def test_identity4_all_ones(self):
        assert mt.poly_eval(mt.identity_tensor4(2), np.ones(2)) == 4.0

    def test_poly_matches_contract_for_symmetric(self):
        a = mt.snd_moment(2, 4)  # symmetric order-4
        x = np.array([0.7, -0.3])
        inner = float(mt.contract_to_vector(a, x).array @ x)
        assert mt.poly_eval(a, x) == pytest.approx(inner, rel=1e-12)


class TestSymmetry:
    def test_outer_power_symmetric(self):
        x = rng(14).standard_normal(3)
        assert mt.is_symmetric(mt.outer_power(x, 3), 1e-12)

    def test_identity4_not_symmetric(self):
        assert not mt.is_symmetric(mt.identity_tensor4(2), 1e-12)

    def test_moment_symmetric(self):
        assert mt.is_symmetric(mt.snd_moment(2, 4), 1e-12)

    def test_requires_cubic(self):
        with pytest.raises(ShapeError):
            mt.is_symmetric(mt.DenseTensor(np.ones((2, 3))), 1e-12)


class TestGuards:
    def test_construction_guard(self, monkeypatch):
        monkeypatch.setenv("MOMENT_TENSORS_MAX_ENTRIES", "10")
        with pytest.raises(GuardError):
            mt.DenseTensor(np.zeros(11))
        # env var may lower but never raise the default
        monkeypatch.setenv("MOMENT_TENSORS_MAX_ENTRIES", str(10**12))
        assert mt.max_entries() == 10**8

    def test_invalid_env_value(self, monkeypatch):
        monkeypatch.setenv("MOMENT_TENSORS_MAX_ENTRIES", "zero")
        with pytest.raises(GuardError):
            mt.max_entries()

    def test_read_only(self):
        t = mt.DenseTensor(np.zeros(3))
        with pytest.raises(ValueError):
            t.array[0] = 1.0


@settings(max_examples=30, deadline=None)
@given(
    p=st.integers(min_value=1, max_value=3),
    q=st.integers(min_value=1, max_value=3),
    seed=st.integers(min_value=0, max_value=2**31),
)
def test_zero_input_gives_zero_output(p, q, seed):
    gen = np.random.default_rng(seed)
    a = mt.DenseTensor.zeros((2,) * p)
    b = mt.DenseTensor(gen.standard_normal((2,) * q))
    t_modes = tuple(sorted(gen.choice(p + q, size=q, replace=False)))
    assert not mt.outer_product(a, b, t_modes).array.any()
    assert not mt.einstein_product(a, b, (0,), (0,)).array.any()


@settings(max_examples=30, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=3),
    k=st.integers(min_value=1, max_value=3),
    seed=st.integers(min_value=0, max_value=2**31),
)
def test_all_mode_transform_of_rank_one(n, k, seed):
    gen = np.random.default_rng(seed)
    b = gen.standard_normal((n, n))
    x = gen.standard_normal(n)
    lhs = mt.apply_all_modes(b, mt.outer_power(x, k)).array
    rhs = mt.outer_power(b @ x, k).array
    scale = max(1.0, np.max(np.abs(rhs)))
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale
