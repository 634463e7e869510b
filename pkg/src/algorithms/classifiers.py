"""
Operator class membership tests and minimal-order searches.

Every test evaluates a defect transform, takes the Frobenius norm of the
result and compares it against ``atol + rtol * scale`` where the scale is
the term-magnitude sum returned by the transform. Raw residuals are always
reported next to the verdict so borderline cases can be audited.

Classes tested here:
    - left (X,m)-invertible: triangle^m_{B,A}(X) = 0
    - (X,n)-symmetry:        delta^n_{B,A}(X) = 0
    - left-(X,(m,n))-symmetric pairs: triangle^m_{B1,A1}(delta^n_{B2,A2}(X)) = 0
    - m-isometric / n-symmetric / (X,(m,n))-isosymmetric operators, the
      specializations B = A* of the three tests above.
"""

import logging
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..models.errors import ConfigurationError
from ..models.instances import PairInstance
from ..models.matrix import CMatrix
from ..models.reports import Classification, ClassReport
from ..models.tolerance import ToleranceContext, resolve_tolerance
from .elementary_ops import (
    ComposeOrder,
    compose_mn_scaled,
    delta_power_scaled,
    triangle_power_scaled,
)

logger = logging.getLogger(__name__)

MAX_GRID_ORDER = 10
MAX_SEARCH_BOUND = 20
ASCENT_LOOKAHEAD = 3


class OrderKind(str, Enum):
    """Which single-pair transform an order search sweeps."""

    TRIANGLE = "triangle"
    DELTA = "delta"


def _fro(M: CMatrix) -> float:
    return float(np.linalg.norm(M.data, "fro"))


def _scaled(kind: OrderKind, B: CMatrix, A: CMatrix, X: CMatrix, k: int) -> Tuple[CMatrix, float]:
    if OrderKind(kind) is OrderKind.TRIANGLE:
        return triangle_power_scaled(B, A, X, k)
    return delta_power_scaled(B, A, X, k)


def order_residual(
    kind: OrderKind,
    B: CMatrix,
    A: CMatrix,
    X: CMatrix,
    k: int,
    tol: Optional[ToleranceContext] = None,
    label: Optional[str] = None,
) -> ClassReport:
    """Residual report of the triangle or delta transform at order k."""
    tol = resolve_tolerance(tol)
    kind = OrderKind(kind)
    value, scale = _scaled(kind, B, A, X, k)
    if label is None:
        label = "left-invertible" if kind is OrderKind.TRIANGLE else "symmetry"
    return ClassReport.measure(label, k, _fro(value), scale, tol)


def residual_left_invertible(
    B: CMatrix,
    A: CMatrix,
    X: CMatrix,
    m: int,
    tol: Optional[ToleranceContext] = None,
) -> ClassReport:
    """
    Test whether A is left (X,m)-invertible by B.

    Parameters:
        B (CMatrix): Left operator.
        A (CMatrix): Right operator.
        X (CMatrix): Weight.
        m (int): Order (>= 1).
        tol (Optional[ToleranceContext]): Defaults to the settings tolerance.

    Returns:
        ClassReport: residual = ||triangle^m_{B,A}(X)||_F.

    Raises:
        DimensionMismatchError: If the dims differ.

    Examples:
        >>> J = CMatrix.from_rows([[1, 1], [0, 1]])
        >>> residual_left_invertible(J.H, J, CMatrix.identity(2), 2).residual
        2.0
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    return order_residual(OrderKind.TRIANGLE, B, A, X, m, tol)


def residual_symmetry(
    B: CMatrix,
    A: CMatrix,
    X: CMatrix,
    n: int,
    tol: Optional[ToleranceContext] = None,
) -> ClassReport:
    """Test whether B is an (X,n)-symmetry of A: ||delta^n_{B,A}(X)||_F."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return order_residual(OrderKind.DELTA, B, A, X, n, tol)


def pair_residual(
    B1: CMatrix,
    A1: CMatrix,
    B2: CMatrix,
    A2: CMatrix,
    X: CMatrix,
    m: int,
    n: int,
    tol: Optional[ToleranceContext] = None,
    label: str = "pair-symmetric",
) -> ClassReport:
    """
    Composed (m,n) residual, maximized over both composition orders.

    The report carries the flag ``orders-disagree`` when the two nested
    evaluations differ beyond tolerance, which happens only when the
    commutation hypotheses fail.
    """
    tol = resolve_tolerance(tol)
    outer_triangle, s1 = compose_mn_scaled(
        B1, A1, B2, A2, X, m, n, ComposeOrder.TRIANGLE_FIRST_OUTSIDE
    )
    outer_delta, s2 = compose_mn_scaled(
        B1, A1, B2, A2, X, m, n, ComposeOrder.DELTA_FIRST_OUTSIDE
    )
    scale = max(s1, s2)
    flags = []
    gap = _fro(outer_triangle - outer_delta)
    if not tol.is_zero(gap, scale):
        flags.append("orders-disagree")
    residual = max(_fro(outer_triangle), _fro(outer_delta))
    return ClassReport.measure(label, [m, n], residual, scale, tol, flags)


def residual_pair_symmetric(p: PairInstance, tol: Optional[ToleranceContext] = None) -> ClassReport:
    """
    Test whether ((B1,A1),(B2,A2)) is left-(X,(m,n))-symmetric.

    Commutators of the instance are reported as ``[A1,A2]=...`` style
    flags whenever they are not zero within tolerance.
    """
    tol = resolve_tolerance(tol)
    report = pair_residual(p.B1, p.A1, p.B2, p.A2, p.X, p.m, p.n, tol)
    for label, value in p.commute_residuals.items():
        if not tol.is_zero(value, report.scale):
            report.flags.append(f"{label}={value:.3e}")
    return report


def strict_at(
    kind: OrderKind,
    B: CMatrix,
    A: CMatrix,
    X: CMatrix,
    k: int,
    tol: Optional[ToleranceContext] = None,
    factor: Optional[float] = None,
) -> bool:
    """
    Strictness at order k: passes at k, and the residual at k-1 exceeds
    ``factor`` times its own threshold (factor defaults to the
    ``strictness_factor`` setting).
    """
    from ..config import get_settings

    if k < 1:
        raise ValueError(f"Strictness needs k >= 1, got {k}")
    tol = resolve_tolerance(tol)
    factor = get_settings().strictness_factor if factor is None else factor
    at_k = order_residual(kind, B, A, X, k, tol)
    if not at_k.verdict:
        return False
    below, scale = _scaled(OrderKind(kind), B, A, X, k - 1)
    return tol.is_strictly_nonzero(_fro(below), scale, factor)


def order_sweep(
    kind: OrderKind,
    B: CMatrix,
    A: CMatrix,
    X: CMatrix,
    bound: int,
    tol: Optional[ToleranceContext] = None,
    label: Optional[str] = None,
) -> List[ClassReport]:
    """Reports at orders 1..bound."""
    tol = resolve_tolerance(tol)
    return [order_residual(kind, B, A, X, k, tol, label) for k in range(1, bound + 1)]


def _warn_non_monotone(reports: List[ClassReport], what: str) -> None:
    for low, high in zip(reports, reports[1:]):
        if low.verdict and not high.verdict:
            logger.warning(
                "Non-monotone %s: passes at order %s (residual %.3e) but fails at %s "
                "(residual %.3e, threshold %.3e)",
                what, low.order, low.residual, high.order, high.residual, high.threshold,
            )


def minimal_order(
    kind: OrderKind,
    B: CMatrix,
    A: CMatrix,
    X: CMatrix,
    bound: int = MAX_SEARCH_BOUND,
    tol: Optional[ToleranceContext] = None,
) -> Optional[int]:
    """
    Smallest order k <= bound at which the transform vanishes.

    After the first passing order the sweep continues a few orders to
    check ascent; a pass followed by a failure is logged as a warning
    with both residuals and does not change the result.

    Parameters:
        kind (OrderKind): TRIANGLE (left-invertibility) or DELTA (symmetry).
        B, A, X (CMatrix): Operands.
        bound (int): Largest order tried (<= 20).
        tol (Optional[ToleranceContext]): Zero-test tolerance.

    Returns:
        Optional[int]: The minimal order, or None when nothing up to
        ``bound`` passes.

    Raises:
        ConfigurationError: If bound is outside 1..20.
    """
    if not 1 <= bound <= MAX_SEARCH_BOUND:
        raise ConfigurationError(f"search bound must be in 1..{MAX_SEARCH_BOUND}, got {bound}")
    tol = resolve_tolerance(tol)
    kind = OrderKind(kind)

    reports: List[ClassReport] = []
    found: Optional[int] = None
    for k in range(1, bound + 1):
        report = order_residual(kind, B, A, X, k, tol)
        reports.append(report)
        if found is None and report.verdict:
            found = k
        if found is not None and k >= found + ASCENT_LOOKAHEAD:
            break

    _warn_non_monotone(reports, f"{kind.value} sweep")
    logger.debug("minimal %s order: %s (bound %d)", kind.value, found, bound)
    return found


def pair_grid(
    B1: CMatrix,
    A1: CMatrix,
    B2: CMatrix,
    A2: CMatrix,
    X: CMatrix,
    m_max: int,
    n_max: int,
    tol: Optional[ToleranceContext] = None,
    label: str = "pair-symmetric",
) -> Dict[Tuple[int, int], ClassReport]:
    """Composed residual reports for every (m, n) in [1..m_max] x [1..n_max]."""
    tol = resolve_tolerance(tol)
    return {
        (m, n): pair_residual(B1, A1, B2, A2, X, m, n, tol, label)
        for m in range(1, m_max + 1)
        for n in range(1, n_max + 1)
    }


def pareto_frontier(grid: Dict[Tuple[int, int], ClassReport]) -> List[Tuple[int, int]]:
    """
    Minimal passing cells: (m, n) passes and no other passing cell
    (m', n') has m' <= m and n' <= n.
    """
    passing = sorted(cell for cell, report in grid.items() if report.verdict)
    frontier: List[Tuple[int, int]] = []
    best_n: Optional[int] = None
    for m, n in passing:
        if best_n is None or n < best_n:
            frontier.append((m, n))
            best_n = n
    return frontier


def minimal_pair_orders(
    B1: CMatrix,
    A1: CMatrix,
    B2: CMatrix,
    A2: CMatrix,
    X: CMatrix,
    bound: int,
    tol: Optional[ToleranceContext] = None,
) -> List[Tuple[int, int]]:
    """Pareto frontier of the composed (m,n) grid up to ``bound`` in both orders."""
    return pareto_frontier(pair_grid(B1, A1, B2, A2, X, bound, bound, tol))


class OperatorClassifier:
    """
    Classifies one operator A against the B = A* specializations.

    The classifier sweeps m-isometry (triangle, X = I), n-symmetry (delta,
    X = I) and the (X,(m,n))-isosymmetry grid, and reports the minimal
    orders together with the Pareto frontier of passing (m, n) cells.
    """

    def __init__(self, tol: Optional[ToleranceContext] = None, verbose: bool = False):
        """
        Initialize the classifier.

        Parameters:
            tol (Optional[ToleranceContext]): Zero-test tolerance.
            verbose (bool): If True, logs every grid cell at INFO level.
        """
        self.tol = resolve_tolerance(tol)
        self.verbose = verbose

    def _log(self, report: ClassReport) -> None:
        level = logging.INFO if self.verbose else logging.DEBUG
        logger.log(
            level, "%-12s order=%-8s residual=%.3e threshold=%.3e %s",
            report.class_label, report.order, report.residual, report.threshold,
            "pass" if report.verdict else "fail",
        )

    def classify(
        self,
        A: CMatrix,
        X: Optional[CMatrix] = None,
        m_max: int = 4,
        n_max: int = 4,
    ) -> Classification:
        """
        Classify A up to the given orders.

        Parameters:
            A (CMatrix): The operator.
            X (Optional[CMatrix]): Weight for the isosymmetry grid; identity
                when omitted. The isometry and symmetry sweeps always use I.
            m_max (int): Largest triangle order (<= 10).
            n_max (int): Largest delta order (<= 10).

        Returns:
            Classification: All reports plus minimal orders and frontier.

        Raises:
            ConfigurationError: If an order bound is outside 1..10.
            DimensionMismatchError: If X has a different dim.
        """
        for name, bound in (("m_max", m_max), ("n_max", n_max)):
            if not 1 <= bound <= MAX_GRID_ORDER:
                raise ConfigurationError(f"{name} must be in 1..{MAX_GRID_ORDER}, got {bound}")
        identity = CMatrix.identity(A.dim)
        X = identity if X is None else X
        Ah = A.H

        isometry = order_sweep(OrderKind.TRIANGLE, Ah, A, identity, m_max, self.tol, "isometry")
        symmetry = order_sweep(OrderKind.DELTA, Ah, A, identity, n_max, self.tol, "symmetry")
        grid = pair_grid(Ah, A, Ah, A, X, m_max, n_max, self.tol, "isosymmetry")

        min_iso = next((r.order for r in isometry if r.verdict), None)
        min_sym = next((r.order for r in symmetry if r.verdict), None)
        frontier = pareto_frontier(grid)
        _warn_non_monotone(isometry, "isometry sweep")
        _warn_non_monotone(symmetry, "symmetry sweep")

        for report in isometry:
            report.witness_order = min_iso
        for report in symmetry:
            report.witness_order = min_sym
        first_cell = list(frontier[0]) if frontier else None
        for report in grid.values():
            report.witness_order = first_cell

        reports = isometry + symmetry + [grid[cell] for cell in sorted(grid)]
        for report in reports:
            self._log(report)

        return Classification(
            dim=A.dim,
            m_max=m_max,
            n_max=n_max,
            reports=reports,
            minimal_isometry_order=min_iso,
            minimal_symmetry_order=min_sym,
            pareto_frontier=[list(cell) for cell in frontier],
        )

    def get_classification_summary(self, result: Classification) -> Dict[str, object]:
        """Compact view: minimal orders, frontier and failing-cell count."""
        return {
            "dim": result.dim,
            "isometry_order": result.minimal_isometry_order,
            "symmetry_order": result.minimal_symmetry_order,
            "isosymmetry_frontier": result.pareto_frontier,
            "passing_cells": sum(1 for r in result.reports if r.verdict),
            "total_cells": len(result.reports),
        }


def classify_operator(
    A: CMatrix,
    X: Optional[CMatrix] = None,
    m_max: int = 4,
    n_max: int = 4,
    tol: Optional[ToleranceContext] = None,
) -> Classification:
    """
    Classify A: m-isometry, n-symmetry and (X,(m,n))-isosymmetry.

    Examples:
        >>> J = CMatrix.from_rows([[1, 1], [0, 1]])
        >>> result = classify_operator(J)
        >>> result.minimal_isometry_order, result.minimal_symmetry_order
        (3, 3)
        >>> result.pareto_frontier
        [[1, 1]]
    """
    return OperatorClassifier(tol).classify(A, X, m_max, n_max)
