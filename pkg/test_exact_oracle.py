"""
Unit tests for the exact-arithmetic oracle.
"""

import numpy as np
import pytest
import sympy

from src.algorithms.elementary_ops import ComposeOrder, delta_power, triangle_power
from src.algorithms.exact_oracle import (
    MAX_EXACT_DIM,
    exact_agreement,
    exact_compose,
    exact_delta,
    exact_triangle,
    from_exact,
    integer_operands,
    to_exact,
)
from src.algorithms.generators import make_rng
from src.models import CMatrix, DimensionTooLargeError

J = CMatrix.from_rows([[1, 1], [0, 1]])
I2 = CMatrix.identity(2)


class TestConversion:
    """
    Test suite for the float <-> exact conversion.
    """

    def test_binary_fractions_are_exact(self):
        E = to_exact(CMatrix.from_rows([[0.1, 0.5j], [-3, 2 ** -40]]))
        assert E[0, 0] == sympy.Rational(0.1)
        assert E[0, 1] == sympy.I / 2
        assert E[1, 1] == sympy.Rational(1, 2 ** 40)

    def test_round_trip(self):
        M = CMatrix.from_rows([[0.1, 1 - 2j], [3.25, -4]])
        assert from_exact(to_exact(M)) == M


class TestExactSums:
    """
    Test suite for the exact delta, triangle and composed sums.
    """

    def test_jordan_values(self):
        assert exact_delta(J.H, J, I2, 2) == sympy.Matrix([[0, 0], [0, -2]])
        assert exact_triangle(J.H, J, I2, 2) == sympy.Matrix([[0, 0], [0, 2]])
        assert exact_triangle(J.H, J, I2, 3) == sympy.zeros(2, 2)

    def test_agrees_with_floating_path(self):
        rng = make_rng(3, 106)
        B1, A1, B2, A2, X = integer_operands(rng, 3)
        np.testing.assert_allclose(from_exact(exact_delta(B2, A2, X, 3)).data, delta_power(B2, A2, X, 3).data, atol=1e-9)
        np.testing.assert_allclose(from_exact(exact_triangle(B1, A1, X, 2)).data, triangle_power(B1, A1, X, 2).data, atol=1e-9)

    def test_compose_orders(self):
        rng = make_rng(4, 106)
        B1, A1, B2, A2, X = integer_operands(rng, 2)
        outer_triangle = exact_compose(B1, A1, B2, A2, X, 2, 1)
        expected = exact_triangle(B1, A1, from_exact(exact_delta(B2, A2, X, 1)), 2)
        assert (outer_triangle - expected).expand() == sympy.zeros(2, 2)
        outer_delta = exact_compose(B1, A1, B2, A2, X, 1, 2, ComposeOrder.DELTA_FIRST_OUTSIDE)
        expected = exact_delta(B2, A2, from_exact(exact_triangle(B1, A1, X, 1)), 2)
        assert (outer_delta - expected).expand() == sympy.zeros(2, 2)

    def test_integer_operands_are_gaussian_integers(self):
        for M in integer_operands(make_rng(0, 106), 3):
            assert np.all(M.data.real == np.round(M.data.real))
            assert np.all(np.abs(M.data.imag) <= 1)


class TestAgreement:
    """
    Test suite for exact_agreement.
    """

    def test_all_checks_pass(self):
        B1, A1, B2, A2, X = integer_operands(make_rng(7, 106), 3)
        checks = exact_agreement(B1, A1, B2, A2, X, 3, 2)
        assert len(checks) == 4
        assert all(c.passed for c in checks)
        assert checks[0].label == "exact:delta^2"
        assert checks[1].label == "exact:triangle^3"

    def test_dimension_cap(self):
        M = CMatrix.identity(MAX_EXACT_DIM + 1)
        with pytest.raises(DimensionTooLargeError):
            exact_agreement(M, M, M, M, M, 1, 1)

    def test_order_cap(self):
        with pytest.raises(ValueError):
            exact_agreement(J, J, J, J, I2, 4, 1)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
