"""Finite-difference derivative tensors on polynomial test functions."""

import numpy as np
import pytest

import moment_tensors as mt


def symmetric_cubic(n, seed):
    gen = np.random.default_rng(seed)
    raw = gen.standard_normal((n,) * 3)
    out = np.zeros_like(raw)
    for idx in np.ndindex(*raw.shape):
        out[idx] = raw[tuple(sorted(idx))]
    return out


class TestHessianTensor:
    def test_quadratic_form(self):
        a = np.array([[2.0, 0.5], [0.5, 1.0]])
        field = mt.ScalarField(evaluator=lambda x: float(x @ a @ x), dimension=2)
        h = mt.hessian_tensor(field, np.array([0.3, -0.2]), 2)
        assert np.max(np.abs(h.array - 2.0 * a)) <= 1e-6 * np.max(np.abs(a))

    def test_constant_function(self):
        for k in (1, 2, 3):
            h = mt.hessian_tensor(lambda x: 4.0, np.zeros(2), k)
            assert not h.array.any()

    def test_cubic_poly_full_order(self):
        coeffs = symmetric_cubic(2, seed=0)
        tensor = mt.DenseTensor(coeffs)
        h = mt.hessian_tensor(
            lambda x: mt.poly_eval(tensor, x), np.array([0.3, -0.2]), 3
        )
        assert np.max(np.abs(h.array - 6.0 * coeffs)) <= 1e-4

    def test_gradient_of_homogeneous_form(self):
        coeffs = symmetric_cubic(2, seed=1)
        tensor = mt.DenseTensor(coeffs)
        x0 = np.array([0.4, 0.7])
        grad = mt.hessian_tensor(lambda x: mt.poly_eval(tensor, x), x0, 1)
        expected = 3.0 * mt.contract_to_vector(tensor, x0).array
        assert np.max(np.abs(grad.array - expected)) <= 1e-5 * max(
            1.0, np.max(np.abs(expected))
        )

    def test_symmetric_before_symmetrization(self):
        coeffs = symmetric_cubic(2, seed=2)
        tensor = mt.DenseTensor(coeffs)
        h = mt.hessian_tensor(
            lambda x: mt.poly_eval(tensor, x),
            np.array([0.1, 0.5]),
            3,
            symmetrize=False,
        )
        assert mt.is_symmetric(h, 1e-6)

    def test_halving_step_quarters_error(self):
        # second-order accuracy needs a nonzero next-order derivative, so probe
        # k=1 on a cubic and k=2 on a quartic
        cases = [
            (lambda x: float(x[0] ** 3), 1, 3.0),  # error = h^2 exactly
            (lambda x: float(x[0] ** 4), 2, 12.0),  # error = 2 h^2
        ]
        x0 = np.array([1.0])
        for f, k, exact in cases:
            errors = []
            for h in (1e-2, 5e-3):
                value = float(mt.hessian_tensor(f, x0, k, h=h).array.reshape(-1)[0])
                errors.append(abs(value - exact))
            ratio = errors[0] / errors[1]
            assert 3.0 < ratio < 5.0

    def test_rejects_high_order(self):
        with pytest.raises(ValueError):
            mt.hessian_tensor(lambda x: 0.0, np.zeros(2), 5)

    def test_non_finite_probe(self):
        with pytest.raises(ValueError):
            mt.hessian_tensor(lambda x: float("nan"), np.zeros(1), 1)


class TestMatrixDerivativeTensor:
    def test_identity_map(self):
        d = mt.matrix_derivative_tensor(lambda x: x, np.zeros((2, 3)))
        direct = np.zeros((2, 2, 3, 3))
        for i1, i2, j1, j2 in np.ndindex(2, 2, 3, 3):
            direct[i1, i2, j1, j2] = float(i1 == i2 and j1 == j2)
        np.testing.assert_allclose(d.array, direct, atol=1e-8)

    def test_left_multiplication_map(self):
        a = np.array([[1.0, 2.0], [3.0, 4.0]])
        d = mt.matrix_derivative_tensor(lambda x: a @ x, np.zeros((2, 2)))
        expected = np.zeros((2, 2, 2, 2))
        for i1, i2, j1, j2 in np.ndindex(2, 2, 2, 2):
            expected[i1, i2, j1, j2] = a[i1, i2] * float(j1 == j2)
        np.testing.assert_allclose(d.array, expected, atol=1e-8)

    def test_constant_map(self):
        d = mt.matrix_derivative_tensor(
            mt.MatrixField(evaluator=lambda x: np.ones((2, 2))), np.zeros((2, 2))
        )
        assert not d.array.any()

    def test_size_is_m_m_n_n(self):
        d = mt.matrix_derivative_tensor(lambda x: x, np.zeros((3, 2)))
        assert d.extents == (3, 3, 2, 2)

    def test_non_finite_probe(self):
        def bad(x):
            return np.full((1, 1), np.inf)

        with pytest.raises(ValueError):
            mt.matrix_derivative_tensor(bad, np.zeros((1, 1)))
