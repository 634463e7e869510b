"""
Exact-arithmetic oracle for the binomial sums.

Operands are converted entry by entry to exact sympy numbers (every binary64
value is a dyadic rational, so the conversion loses nothing) and the delta,
triangle and composed sums are evaluated without rounding. Comparing against
the floating path bounds the rounding of the floating evaluation; the
comparison uses the floating term-magnitude scale with a 1e-9 relative
tolerance.
"""

import logging
from math import comb
from typing import List, Optional, Sequence

import numpy as np
import sympy

from ..models.errors import DimensionTooLargeError
from ..models.matrix import CMatrix
from ..models.reports import Residual
from ..models.tolerance import ToleranceContext, resolve_tolerance
from .elementary_ops import (
    ComposeOrder,
    check_order,
    compose_mn_scaled,
    delta_power_scaled,
    triangle_power_scaled,
)

logger = logging.getLogger(__name__)

EXACT_RTOL = 1e-9
MAX_EXACT_DIM = 4
MAX_EXACT_ORDER = 3


def to_exact(M: CMatrix) -> sympy.Matrix:
    """CMatrix -> sympy.Matrix of exact Gaussian rationals."""
    return sympy.Matrix(
        M.dim,
        M.dim,
        [sympy.Rational(float(z.real)) + sympy.I * sympy.Rational(float(z.imag)) for z in M.data.reshape(-1)],
    )


def from_exact(E: sympy.Matrix) -> CMatrix:
    return CMatrix(np.array([[complex(e) for e in row] for row in E.tolist()], dtype=np.complex128))


def _powers(E: sympy.Matrix, k: int) -> List[sympy.Matrix]:
    result = [sympy.eye(E.rows)]
    for _ in range(k):
        result.append((result[-1] * E).expand())
    return result


def exact_delta(B: CMatrix, A: CMatrix, X: CMatrix, n: int) -> sympy.Matrix:
    """delta^n_{B,A}(X) in exact arithmetic."""
    return _exact_delta_of(to_exact(B), to_exact(A), to_exact(X), n)


def exact_triangle(B: CMatrix, A: CMatrix, X: CMatrix, m: int) -> sympy.Matrix:
    """triangle^m_{B,A}(X) in exact arithmetic."""
    return _exact_triangle_of(to_exact(B), to_exact(A), to_exact(X), m)


def exact_compose(
    B1: CMatrix,
    A1: CMatrix,
    B2: CMatrix,
    A2: CMatrix,
    X: CMatrix,
    m: int,
    n: int,
    order: ComposeOrder = ComposeOrder.TRIANGLE_FIRST_OUTSIDE,
) -> sympy.Matrix:
    """Composed (m,n) transform in exact arithmetic, for the nested orders."""
    order = ComposeOrder(order)
    if order is ComposeOrder.DELTA_FIRST_OUTSIDE:
        inner = exact_triangle(B1, A1, X, m)
        return _exact_delta_of(to_exact(B2), to_exact(A2), inner, n)
    inner = _exact_delta_of(to_exact(B2), to_exact(A2), to_exact(X), n)
    return _exact_triangle_of(to_exact(B1), to_exact(A1), inner, m)


def _exact_delta_of(B: sympy.Matrix, A: sympy.Matrix, X: sympy.Matrix, n: int) -> sympy.Matrix:
    check_order(n, "n")
    Bp, Ap = _powers(B, n), _powers(A, n)
    total = sympy.zeros(X.rows, X.rows)
    for j in range(n + 1):
        total += (-1) ** j * comb(n, j) * Bp[n - j] * X * Ap[j]
    return total.expand()


def _exact_triangle_of(B: sympy.Matrix, A: sympy.Matrix, X: sympy.Matrix, m: int) -> sympy.Matrix:
    check_order(m, "m")
    Bp, Ap = _powers(B, m), _powers(A, m)
    total = sympy.zeros(X.rows, X.rows)
    for j in range(m + 1):
        total += (-1) ** j * comb(m, j) * Bp[m - j] * X * Ap[m - j]
    return total.expand()


def _compare(label: str, value: CMatrix, scale: float, exact: sympy.Matrix, tol: ToleranceContext) -> Residual:
    diff = float(np.linalg.norm(value.data - from_exact(exact).data, "fro"))
    return Residual.zero(label, diff, scale, ToleranceContext(atol=tol.atol, rtol=EXACT_RTOL))


def exact_agreement(
    B1: CMatrix,
    A1: CMatrix,
    B2: CMatrix,
    A2: CMatrix,
    X: CMatrix,
    m: int,
    n: int,
    tol: Optional[ToleranceContext] = None,
) -> List[Residual]:
    """
    Compare the floating delta, triangle and composed sums with exact ones.

    Parameters:
        B1, A1 (CMatrix): Triangle pair.
        B2, A2 (CMatrix): Delta pair.
        X (CMatrix): Argument.
        m, n (int): Orders (at most 3).
        tol (Optional[ToleranceContext]): Supplies atol; rtol is fixed at 1e-9.

    Returns:
        List[Residual]: One residual per evaluated transform, labeled
        ``exact:delta^n``, ``exact:triangle^m`` and ``exact:<ComposeOrder>``.

    Raises:
        DimensionTooLargeError: If dim exceeds 4.
        ValueError: If an order exceeds 3.
    """
    tol = resolve_tolerance(tol)
    if X.dim > MAX_EXACT_DIM:
        raise DimensionTooLargeError(f"exact oracle needs dim <= {MAX_EXACT_DIM}, got {X.dim}")
    if max(m, n) > MAX_EXACT_ORDER:
        raise ValueError(f"exact oracle needs orders <= {MAX_EXACT_ORDER}, got ({m}, {n})")

    checks = []
    value, scale = delta_power_scaled(B2, A2, X, n)
    checks.append(_compare(f"exact:delta^{n}", value, scale, exact_delta(B2, A2, X, n), tol))
    value, scale = triangle_power_scaled(B1, A1, X, m)
    checks.append(_compare(f"exact:triangle^{m}", value, scale, exact_triangle(B1, A1, X, m), tol))
    for order in (ComposeOrder.TRIANGLE_FIRST_OUTSIDE, ComposeOrder.DELTA_FIRST_OUTSIDE):
        value, scale = compose_mn_scaled(B1, A1, B2, A2, X, m, n, order)
        exact = exact_compose(B1, A1, B2, A2, X, m, n, order)
        checks.append(_compare(f"exact:{order.value}@({m},{n})", value, scale, exact, tol))
    logger.debug("exact oracle dim=%d (m,n)=(%d,%d): %d checks", X.dim, m, n, len(checks))
    return checks


def gaussian_integer_matrix(rng: np.random.Generator, dim: int, radius: int = 2) -> CMatrix:
    """Random matrix with entries a + bi, a in [-radius, radius], b in [-1, 1]."""
    real = rng.integers(-radius, radius + 1, size=(dim, dim))
    imag = rng.integers(-1, 2, size=(dim, dim))
    return CMatrix(real + 1j * imag)


def integer_operands(rng: np.random.Generator, dim: int) -> Sequence[CMatrix]:
    """(B1, A1, B2, A2, X) with Gaussian-integer entries."""
    return tuple(gaussian_integer_matrix(rng, dim) for _ in range(5))
