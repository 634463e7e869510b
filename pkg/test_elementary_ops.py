"""
Unit tests for the elementary operators delta^n_{B,A}, triangle^m_{B,A},
their compositions and superoperator realizations.
"""

from math import comb

import numpy as np
import pytest

from src.algorithms.elementary_ops import (
    ComposeOrder,
    SuperOpKind,
    as_superop,
    compose_mn,
    compose_mn_scaled,
    delta_apply,
    delta_power,
    delta_power_scaled,
    perturbed_delta_expansion,
    perturbed_triangle_expansion,
    product_delta_expansion,
    product_triangle_expansion,
    triangle_apply,
    triangle_power,
)
from src.algorithms.generators import commuting_matrices, gaussian_matrix, make_rng
from src.models import CMatrix, DimensionMismatchError, DimensionTooLargeError, OrderTooLargeError

J = CMatrix.from_rows([[1, 1], [0, 1]])
I2 = CMatrix.identity(2)


def _random(seed: int, d: int, count: int):
    rng = make_rng(seed, 7)
    return [gaussian_matrix(rng, d) for _ in range(count)]


class TestSingleTransforms:
    """
    Test suite for delta and triangle at fixed orders.
    """

    def test_delta_apply(self):
        B = CMatrix.from_rows([[1, 0], [1, 1]])
        np.testing.assert_array_equal(delta_apply(B, J, I2).data, [[0, -1], [1, 0]])

    def test_triangle_apply(self):
        np.testing.assert_array_equal(triangle_apply(J.H, J, I2).data, [[0, 1], [1, 1]])

    def test_jordan_delta_two(self):
        """delta^2_{J*,J}(I) = [[0,0],[0,-2]]."""
        np.testing.assert_allclose(delta_power(J.H, J, I2, 2).data, [[0, 0], [0, -2]], atol=1e-14)

    def test_jordan_triangle_two(self):
        """triangle^2_{J*,J}(I) = [[0,0],[0,2]]."""
        np.testing.assert_allclose(triangle_power(J.H, J, I2, 2).data, [[0, 0], [0, 2]], atol=1e-14)

    def test_jordan_order_three_vanishes(self):
        assert not np.any(np.abs(delta_power(J.H, J, I2, 3).data) > 1e-12)
        assert not np.any(np.abs(triangle_power(J.H, J, I2, 3).data) > 1e-12)

    def test_order_zero_is_identity_map(self):
        X = CMatrix.from_rows([[1, 2], [3, 4]])
        assert delta_power(J, J, X, 0) == X
        assert triangle_power(J, J, X, 0) == X

    def test_scalar_operators(self):
        """For B = bI, A = aI: delta^n(X) = (b-a)^n X, triangle^m(X) = (ba-1)^m X."""
        b, a = 2.0, 0.5
        X = CMatrix.from_rows([[1, 2], [0, 1]])
        B, A = b * I2, a * I2
        for k in range(1, 5):
            assert delta_power(B, A, X, k).allclose((b - a) ** k * X, atol=1e-12)
            assert triangle_power(B, A, X, k).allclose((b * a - 1) ** k * X, atol=1e-12)

    def test_two_identity_isometry_residual(self):
        """triangle^m_{2I,2I}(I) = 3^m I."""
        for m in range(1, 5):
            value = triangle_power(2 * I2, 2 * I2, I2, m)
            assert np.linalg.norm(value.data) == pytest.approx(3 ** m * np.sqrt(2))

    def test_binomial_sum_equals_iteration(self):
        B, A, X = _random(1, 4, 3)
        for k in range(1, 5):
            iterated_delta, iterated_triangle = X, X
            for _ in range(k):
                iterated_delta = delta_apply(B, A, iterated_delta)
                iterated_triangle = triangle_apply(B, A, iterated_triangle)
            assert delta_power(B, A, X, k).allclose(iterated_delta, atol=1e-9)
            assert triangle_power(B, A, X, k).allclose(iterated_triangle, atol=1e-9)

    def test_scale_is_term_magnitude_sum(self):
        """For B = A = I and X = I the scale is sum_j C(n,j) ||I||_F."""
        _, scale = delta_power_scaled(I2, I2, I2, 3)
        assert scale == pytest.approx(sum(comb(3, j) for j in range(4)) * np.sqrt(2))

    def test_order_guard(self):
        with pytest.raises(OrderTooLargeError):
            delta_power(J, J, I2, 63)
        Z = CMatrix.zeros(2)
        assert delta_power(Z, Z, I2, 62) == Z

    def test_negative_order(self):
        with pytest.raises(ValueError):
            triangle_power(J, J, I2, -1)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            delta_power(J, J, CMatrix.identity(3), 1)


class TestComposition:
    """
    Test suite for compose_mn in its four orders.
    """

    def test_triangle_first_outside_is_nested(self):
        B1, A1, B2, A2, X = _random(2, 3, 5)
        expected = triangle_power(B1, A1, delta_power(B2, A2, X, 2), 3)
        assert compose_mn(B1, A1, B2, A2, X, 3, 2).allclose(expected, atol=1e-9)

    def test_delta_first_outside_is_nested(self):
        B1, A1, B2, A2, X = _random(3, 3, 5)
        expected = delta_power(B2, A2, triangle_power(B1, A1, X, 2), 2)
        result = compose_mn(B1, A1, B2, A2, X, 2, 2, ComposeOrder.DELTA_FIRST_OUTSIDE)
        assert result.allclose(expected, atol=1e-9)

    def test_orders_agree_under_commutation(self):
        rng = make_rng(4, 7)
        A1, A2 = commuting_matrices(rng, 4, 2)
        B1, B2 = commuting_matrices(rng, 4, 2)
        X = gaussian_matrix(rng, 4)
        reference = compose_mn(B1, A1, B2, A2, X, 2, 3)
        for order in (ComposeOrder.DELTA_FIRST_OUTSIDE, ComposeOrder.DOUBLE_SUM):
            assert compose_mn(B1, A1, B2, A2, X, 2, 3, order).allclose(reference, atol=1e-9)

    def test_orders_differ_without_commutation(self):
        """Non-commuting pairs separate the two nesting orders."""
        N = CMatrix.from_rows([[0, 1], [0, 0]])
        first = compose_mn(N, I2, N.H, I2, I2, 1, 1, ComposeOrder.TRIANGLE_FIRST_OUTSIDE)
        second = compose_mn(N, I2, N.H, I2, I2, 1, 1, ComposeOrder.DELTA_FIRST_OUTSIDE)
        assert not first.allclose(second, atol=1e-6)

    def test_compose_scale_is_positive(self):
        B1, A1, B2, A2, X = _random(5, 2, 5)
        _, scale = compose_mn_scaled(B1, A1, B2, A2, X, 2, 2)
        assert scale > 0.0

    def test_order_guard(self):
        with pytest.raises(OrderTooLargeError):
            compose_mn(J, J, J, J, I2, 63, 1)


class TestSuperOperators:
    """
    Test suite for the vec realizations of the transforms.
    """

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_delta_superop(self, k):
        B, A, X = _random(10 + k, 3, 3)
        op = as_superop(SuperOpKind.DELTA, (B, A), (k,))
        assert op.dim == 9
        assert op.apply(X).allclose(delta_power(B, A, X, k), atol=1e-9)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_triangle_superop(self, k):
        B, A, X = _random(20 + k, 3, 3)
        op = as_superop(SuperOpKind.TRIANGLE, (B, A), (k,))
        assert op.apply(X).allclose(triangle_power(B, A, X, k), atol=1e-9)

    def test_compose_superop(self):
        B1, A1, B2, A2, X = _random(30, 2, 5)
        op = as_superop(SuperOpKind.COMPOSE_MN, (B1, A1, B2, A2), (2, 3))
        assert op.apply(X).allclose(compose_mn(B1, A1, B2, A2, X, 2, 3), atol=1e-9)

    def test_superop_cap(self):
        """d^2 above max_superop_dim (4096) is rejected."""
        big = CMatrix.identity(65)
        with pytest.raises(DimensionTooLargeError):
            as_superop(SuperOpKind.DELTA, (big, big), (1,))


class TestExpansions:
    """
    Test suite for the product and perturbation expansions.
    """

    def test_product_expansions(self):
        rng = make_rng(40, 7)
        S, B = commuting_matrices(rng, 3, 2)
        T, A = commuting_matrices(rng, 3, 2)
        X = gaussian_matrix(rng, 3)
        for N in (1, 2, 3):
            expanded, _ = product_delta_expansion(S, B, T, A, X, N)
            assert expanded.allclose(delta_power(S @ B, T @ A, X, N), atol=1e-9)
            expanded, _ = product_triangle_expansion(S, B, T, A, X, N)
            assert expanded.allclose(triangle_power(S @ B, T @ A, X, N), atol=1e-9)

    def test_perturbation_expansions(self):
        rng = make_rng(41, 7)
        A, N = commuting_matrices(rng, 3, 2, nilpotent=True)
        B = gaussian_matrix(rng, 3)
        X = gaussian_matrix(rng, 3)
        for K in (1, 2, 4):
            expanded, _ = perturbed_triangle_expansion(B, A, N, X, K)
            assert expanded.allclose(triangle_power(B, A + N, X, K), atol=1e-9)
            expanded, _ = perturbed_delta_expansion(B, A, N, X, K)
            assert expanded.allclose(delta_power(B, A + N, X, K), atol=1e-9)


def test_jordan_transform_table():
    """
    Scenario: print delta^k and triangle^k of the 2x2 Jordan block for k = 1..3.
    """
    print("=" * 80)
    print("Jordan block J = [[1,1],[0,1]]: ||delta^k(I)||, ||triangle^k(I)||")
    print("=" * 80)
    expected = {1: (np.sqrt(2), np.sqrt(3)), 2: (2.0, 2.0), 3: (0.0, 0.0)}
    for k, (d_norm, t_norm) in expected.items():
        d = np.linalg.norm(delta_power(J.H, J, I2, k).data)
        t = np.linalg.norm(triangle_power(J.H, J, I2, k).data)
        print(f"k={k}: delta {d:.6f}  triangle {t:.6f}")
        assert d == pytest.approx(d_norm, abs=1e-12)
        assert t == pytest.approx(t_norm, abs=1e-12)
    print("✓ Jordan block vanishes at order 3 for both transforms")
    print()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
