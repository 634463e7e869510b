"""
Unit tests for the operator classifiers: membership residuals, minimal
orders, strictness and the isosymmetry frontier.
"""

import numpy as np
import pytest

from src.algorithms.classifiers import (
    OperatorClassifier,
    OrderKind,
    classify_operator,
    minimal_order,
    pair_residual,
    pareto_frontier,
    residual_left_invertible,
    residual_pair_symmetric,
    residual_symmetry,
    strict_at,
)
from src.algorithms.generators import jordan_block
from src.models import CMatrix, ClassReport, ConfigurationError, PairInstance, ToleranceContext

J = CMatrix.from_rows([[1, 1], [0, 1]])
I2 = CMatrix.identity(2)
N = CMatrix.from_rows([[0, 1], [0, 0]])


class TestMembership:
    """
    Test suite for the single-order residual reports.
    """

    def test_jordan_left_invertible(self):
        """triangle^2_{J*,J}(I) has norm 2; order 3 vanishes."""
        assert residual_left_invertible(J.H, J, I2, 2).residual == pytest.approx(2.0)
        report = residual_left_invertible(J.H, J, I2, 3)
        assert report.verdict
        assert report.residual <= report.threshold

    def test_jordan_symmetry(self):
        assert not residual_symmetry(J.H, J, I2, 2).verdict
        assert residual_symmetry(J.H, J, I2, 3).verdict

    def test_two_identity(self):
        """2I: triangle residual 3^m sqrt(d), delta already zero at order 1."""
        A = 2 * CMatrix.identity(3)
        for m in (1, 2, 3):
            report = residual_left_invertible(A.H, A, CMatrix.identity(3), m)
            assert report.residual == pytest.approx(3 ** m * np.sqrt(3))
            assert not report.verdict
        assert residual_symmetry(A.H, A, CMatrix.identity(3), 1).verdict

    def test_unitary_is_one_isometry(self):
        U = CMatrix(np.diag([1.0, 1j, np.exp(0.3j)]))
        assert residual_left_invertible(U.H, U, CMatrix.identity(3), 1).verdict

    def test_threshold_uses_scale(self):
        tol = ToleranceContext(atol=1e-12, rtol=1e-9)
        report = residual_left_invertible(J.H, J, I2, 2, tol)
        assert report.threshold == pytest.approx(tol.threshold(report.scale))

    def test_order_must_be_positive(self):
        with pytest.raises(ValueError):
            residual_symmetry(J.H, J, I2, 0)

    def test_report_json_uses_class_key(self):
        payload = residual_symmetry(J.H, J, I2, 1).to_json()
        assert payload["class"] == "symmetry"
        assert set(payload) >= {"class", "order", "residual", "scale", "threshold", "verdict"}

    def test_inconsistent_verdict_rejected(self):
        with pytest.raises(ValueError):
            ClassReport(class_label="x", order=1, residual=1.0, scale=1.0, threshold=0.5, verdict=True)


class TestPairs:
    """
    Test suite for composed (m,n) residuals.
    """

    def test_jordan_pair_vanishes_at_one_one(self):
        report = pair_residual(J.H, J, J.H, J, I2, 1, 1)
        assert report.verdict
        assert report.order == [1, 1]
        assert "orders-disagree" not in report.flags

    def test_jordan_pair_rank_one_weight(self):
        """X = e11 with the Jordan pair still vanishes at (1,1)."""
        X = CMatrix.from_rows([[1, 0], [0, 0]])
        report = pair_residual(J.H, J, J.H, J, X, 1, 1)
        assert report.residual == pytest.approx(0.0, abs=1e-12)
        assert report.verdict

    def test_orders_disagree_flag(self):
        """[N, N*] != 0 so the two nestings differ by diag(1, -1)."""
        report = pair_residual(N, I2, N.H, I2, I2, 1, 1)
        assert "orders-disagree" in report.flags

    def test_pair_instance_reports_commutators(self):
        instance = PairInstance(N, I2, N.H, I2, I2, 1, 1)
        report = residual_pair_symmetric(instance)
        assert any(flag.startswith("[B1,B2]=") for flag in report.flags)
        assert not any(flag.startswith("[A1,A2]=") for flag in report.flags)

    def test_diagonal_weight(self):
        """A = diag(1,-1,0): X = I passes at (1,1), X = I + e13 has residual 1."""
        A = CMatrix(np.diag([1.0, -1.0, 0.0]))
        I3 = CMatrix.identity(3)
        assert pair_residual(A, A, A, A, I3, 1, 1).verdict
        E = np.zeros((3, 3))
        E[0, 2] = 1.0
        report = pair_residual(A, A, A, A, I3 + CMatrix(E), 1, 1)
        assert report.residual == pytest.approx(1.0)
        assert not report.verdict


class TestOrderSearch:
    """
    Test suite for minimal_order and strict_at.
    """

    def test_jordan_two(self):
        assert minimal_order(OrderKind.TRIANGLE, J.H, J, I2) == 3
        assert minimal_order(OrderKind.DELTA, J.H, J, I2) == 3

    def test_jordan_three_symmetry_order_five(self):
        """A real scalar plus a 3-nilpotent is a strict 5-symmetry."""
        A = jordan_block(1, 3)
        I3 = CMatrix.identity(3)
        assert minimal_order(OrderKind.DELTA, A.H, A, I3) == 5
        assert strict_at(OrderKind.DELTA, A.H, A, I3, 5)

    def test_none_when_nothing_passes(self):
        A = 2 * CMatrix(np.diag([1.0, 1j]))
        assert minimal_order(OrderKind.TRIANGLE, A.H, A, I2, bound=10) is None

    def test_bound_limits(self):
        with pytest.raises(ConfigurationError):
            minimal_order(OrderKind.TRIANGLE, J.H, J, I2, bound=21)
        with pytest.raises(ConfigurationError):
            minimal_order(OrderKind.TRIANGLE, J.H, J, I2, bound=0)

    def test_strictness(self):
        assert strict_at(OrderKind.TRIANGLE, J.H, J, I2, 3)
        # passes at 4, but order 3 already vanishes
        assert not strict_at(OrderKind.TRIANGLE, J.H, J, I2, 4)
        # fails at 2
        assert not strict_at(OrderKind.TRIANGLE, J.H, J, I2, 2)

    def test_strictness_needs_positive_order(self):
        with pytest.raises(ValueError):
            strict_at(OrderKind.DELTA, J.H, J, I2, 0)


class TestClassifier:
    """
    Test suite for OperatorClassifier and the Pareto frontier.
    """

    def test_frontier_keeps_minimal_cells(self):
        tol = ToleranceContext()
        passing = {(1, 3), (2, 2), (2, 3), (3, 1), (3, 3)}
        grid = {
            (m, n): ClassReport.measure("isosymmetry", [m, n], 0.0 if (m, n) in passing else 1.0, 1.0, tol)
            for m in (1, 2, 3)
            for n in (1, 2, 3)
        }
        assert pareto_frontier(grid) == [(1, 3), (2, 2), (3, 1)]

    def test_empty_frontier(self):
        tol = ToleranceContext()
        grid = {(1, 1): ClassReport.measure("isosymmetry", [1, 1], 1.0, 1.0, tol)}
        assert pareto_frontier(grid) == []

    def test_classify_jordan(self):
        result = classify_operator(J)
        assert result.minimal_isometry_order == 3
        assert result.minimal_symmetry_order == 3
        assert result.pareto_frontier == [[1, 1]]
        assert len(result.reports) == 4 + 4 + 16

    def test_witness_orders(self):
        result = classify_operator(J)
        isometry = [r for r in result.reports if r.class_label == "isometry"]
        assert all(r.witness_order == 3 for r in isometry)
        grid = [r for r in result.reports if r.class_label == "isosymmetry"]
        assert all(r.witness_order == [1, 1] for r in grid)

    def test_classify_identity(self):
        result = classify_operator(CMatrix.identity(3), m_max=2, n_max=2)
        assert result.minimal_isometry_order == 1
        assert result.minimal_symmetry_order == 1
        assert result.pareto_frontier == [[1, 1]]

    def test_grid_bound(self):
        with pytest.raises(ConfigurationError):
            classify_operator(J, m_max=11)

    def test_summary(self):
        classifier = OperatorClassifier(verbose=True)
        result = classifier.classify(J, m_max=3, n_max=3)
        summary = classifier.get_classification_summary(result)
        assert summary["isometry_order"] == 3
        assert summary["symmetry_order"] == 3
        assert summary["total_cells"] == 3 + 3 + 9


def test_classification_table():
    """
    Scenario: classify a handful of small operators and print the table.
    """
    cases = {
        "jordan2": (J, 3, 3),
        "jordan3": (jordan_block(1, 3), 5, 5),
        "identity": (I2, 1, 1),
        "2I": (2 * I2, None, 1),
    }
    print("=" * 80)
    print(f"{'operator':<12} {'isometry':>10} {'symmetry':>10}")
    print("=" * 80)
    for name, (A, iso, sym) in cases.items():
        result = classify_operator(A, m_max=6, n_max=6)
        print(f"{name:<12} {str(result.minimal_isometry_order):>10} {str(result.minimal_symmetry_order):>10}")
        assert result.minimal_isometry_order == iso
        assert result.minimal_symmetry_order == sym
    print("✓ Minimal orders match the known values")
    print()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
