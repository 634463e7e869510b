"""
Elementary-operator transforms.

For operators B, A, X of one dimension this module evaluates

    delta_{B,A}^n(X)    = (L_B - R_A)^n (X)
                        = sum_j (-1)^j C(n,j) B^(n-j) X A^j
    triangle_{B,A}^m(X) = (L_B R_A - I)^m (X)
                        = sum_j (-1)^j C(m,j) B^(m-j) X A^(m-j)

their composition in several evaluation orders, and the same maps as
superoperators on vec(X) for cross-checking. Binomial coefficients are exact
integers; sums run j ascending (outer) then k ascending (inner).

Every ``*_scaled`` variant also returns the term-magnitude scale of the sum,
the sum of the Frobenius norms of its terms, used by the zero tests.
"""

from enum import Enum
from math import comb
from typing import List, Sequence, Tuple

import numpy as np

from ..models.errors import DimensionMismatchError, DimensionTooLargeError, OrderTooLargeError
from ..models.matrix import CMatrix
from ..models.superop import SuperOp
from ..utils.matrix_ops import kron, powers



class ComposeOrder(str, Enum):
    """Evaluation order of the composed (m,n) transform."""

    TRIANGLE_FIRST_OUTSIDE = "TriangleFirstOutside"
    DELTA_FIRST_OUTSIDE = "DeltaFirstOutside"
    DOUBLE_SUM = "DoubleSum"
    ABSTRACT_DOUBLE_SUM = "AbstractDoubleSum"


class SuperOpKind(str, Enum):
    DELTA = "Delta"
    TRIANGLE = "Triangle"
    COMPOSE_MN = "ComposeMN"


def check_order(k: int, name: str = "order") -> int:
    """
    Validate a transform order.

    Raises:
        ValueError: If k is negative.
        OrderTooLargeError: If k exceeds the ``max_order`` setting (62).
    """
    from ..config import get_settings

    if k < 0:
        raise ValueError(f"{name} must be nonnegative, got {k}")
    limit = get_settings().max_order
    if k > limit:
        raise OrderTooLargeError(f"{name} {k} exceeds the exact binomial guard {limit}")
    return k


def _common_dim(*matrices: CMatrix) -> int:
    dims = {M.dim for M in matrices}
    if len(dims) != 1:
        raise DimensionMismatchError(f"Operands have mismatched dims {sorted(dims)}")
    return dims.pop()


def _fro(array: np.ndarray) -> float:
    return float(np.linalg.norm(array, "fro"))


def _power_arrays(M: CMatrix, k: int) -> List[np.ndarray]:
    return [P.data for P in powers(M, k)]


# Single applications

def delta_apply(B: CMatrix, A: CMatrix, X: CMatrix) -> CMatrix:
    """
    Return BX - XA.

    Examples:
        >>> B = CMatrix.from_rows([[1, 0], [1, 1]])
        >>> A = CMatrix.from_rows([[1, 1], [0, 1]])
        >>> delta_apply(B, A, CMatrix.identity(2))  # [[0, -1], [1, 0]]
    """
    _common_dim(B, A, X)
    return B @ X - X @ A


def triangle_apply(B: CMatrix, A: CMatrix, X: CMatrix) -> CMatrix:
    """Return BXA - X."""
    _common_dim(B, A, X)
    return B @ X @ A - X


# Binomial-sum powers

def delta_power_scaled(B: CMatrix, A: CMatrix, X: CMatrix, n: int) -> Tuple[CMatrix, float]:
    """
    delta_{B,A}^n(X) with its term-magnitude scale.

    Returns:
        Tuple[CMatrix, float]: (value, sum_j C(n,j) ||B^(n-j) X A^j||_F).
    """
    _common_dim(B, A, X)
    check_order(n, "n")
    if n == 0:
        return X, _fro(X.data)

    Bp = _power_arrays(B, n)
    Ap = _power_arrays(A, n)
    total = np.zeros_like(X.data)
    scale = 0.0
    for j in range(n + 1):
        coeff = comb(n, j)
        term = Bp[n - j] @ X.data @ Ap[j]
        total += float((-1) ** j * coeff) * term
        scale += coeff * _fro(term)
    return CMatrix(total), scale


def delta_power(B: CMatrix, A: CMatrix, X: CMatrix, n: int) -> CMatrix:
    """
    Return delta_{B,A}^n(X) = sum_j (-1)^j C(n,j) B^(n-j) X A^j.

    Parameters:
        B (CMatrix): Left operator.
        A (CMatrix): Right operator.
        X (CMatrix): Argument.
        n (int): Order; n = 0 returns X.

    Raises:
        DimensionMismatchError: If the dims differ.
        OrderTooLargeError: If n > 62.
    """
    return delta_power_scaled(B, A, X, n)[0]


def triangle_power_scaled(B: CMatrix, A: CMatrix, X: CMatrix, m: int) -> Tuple[CMatrix, float]:
    """triangle_{B,A}^m(X) with its term-magnitude scale."""
    _common_dim(B, A, X)
    check_order(m, "m")
    if m == 0:
        return X, _fro(X.data)

    Bp = _power_arrays(B, m)
    Ap = _power_arrays(A, m)
    total = np.zeros_like(X.data)
    scale = 0.0
    for j in range(m + 1):
        coeff = comb(m, j)
        term = Bp[m - j] @ X.data @ Ap[m - j]
        total += float((-1) ** j * coeff) * term
        scale += coeff * _fro(term)
    return CMatrix(total), scale


def triangle_power(B: CMatrix, A: CMatrix, X: CMatrix, m: int) -> CMatrix:
    """Return triangle_{B,A}^m(X) = sum_j (-1)^j C(m,j) B^(m-j) X A^(m-j)."""
    return triangle_power_scaled(B, A, X, m)[0]


# Composition

def _double_sum(
    B1: CMatrix,
    A1: CMatrix,
    B2: CMatrix,
    A2: CMatrix,
    X: CMatrix,
    m: int,
    n: int,
    order: ComposeOrder,
) -> Tuple[np.ndarray, float]:
    """Sum of the (m+1)(n+1) signed terms for the given factor placement."""
    B1p, A1p = _power_arrays(B1, m), _power_arrays(A1, m)
    B2p, A2p = _power_arrays(B2, n), _power_arrays(A2, n)
    total = np.zeros_like(X.data)
    scale = 0.0
    for j in range(m + 1):
        for k in range(n + 1):
            coeff = comb(m, j) * comb(n, k)
            if order is ComposeOrder.TRIANGLE_FIRST_OUTSIDE:
                term = B1p[m - j] @ B2p[n - k] @ X.data @ A2p[k] @ A1p[m - j]
            elif order is ComposeOrder.DELTA_FIRST_OUTSIDE:
                term = B2p[n - k] @ B1p[m - j] @ X.data @ A1p[m - j] @ A2p[k]
            elif order is ComposeOrder.DOUBLE_SUM:
                # L_{B1}^{m-j} L_{B2}^{n-k} R_{A2}^k R_{A1}^{m-j} (X)
                term = B1p[m - j] @ B2p[n - k] @ X.data @ A1p[m - j] @ A2p[k]
            else:
                term = B1p[m - j] @ B2p[n - k] @ X.data @ A2p[n - k] @ A1p[j]
            total += float((-1) ** (j + k) * coeff) * term
            scale += coeff * _fro(term)
    return total, scale


def compose_mn_scaled(
    B1: CMatrix,
    A1: CMatrix,
    B2: CMatrix,
    A2: CMatrix,
    X: CMatrix,
    m: int,
    n: int,
    order: ComposeOrder = ComposeOrder.TRIANGLE_FIRST_OUTSIDE,
) -> Tuple[CMatrix, float]:
    """compose_mn with its term-magnitude scale."""
    _common_dim(B1, A1, B2, A2, X)
    check_order(m, "m")
    check_order(n, "n")
    order = ComposeOrder(order)

    if order is ComposeOrder.TRIANGLE_FIRST_OUTSIDE:
        value = triangle_power(B1, A1, delta_power(B2, A2, X, n), m)
    elif order is ComposeOrder.DELTA_FIRST_OUTSIDE:
        value = delta_power(B2, A2, triangle_power(B1, A1, X, m), n)
    else:
        total, scale = _double_sum(B1, A1, B2, A2, X, m, n, order)
        return CMatrix(total), scale

    _, scale = _double_sum(B1, A1, B2, A2, X, m, n, order)
    return value, scale


def compose_mn(
    B1: CMatrix,
    A1: CMatrix,
    B2: CMatrix,
    A2: CMatrix,
    X: CMatrix,
    m: int,
    n: int,
    order: ComposeOrder = ComposeOrder.TRIANGLE_FIRST_OUTSIDE,
) -> CMatrix:
    """
    Composed (m,n) transform.

    Parameters:
        B1, A1 (CMatrix): Pair of the triangle transform.
        B2, A2 (CMatrix): Pair of the delta transform.
        X (CMatrix): Argument.
        m, n (int): Orders.
        order (ComposeOrder):
            - TriangleFirstOutside: triangle^m_{B1,A1}(delta^n_{B2,A2}(X))
            - DeltaFirstOutside: delta^n_{B2,A2}(triangle^m_{B1,A1}(X))
            - DoubleSum: sum (-1)^(j+k) C(m,j) C(n,k) B1^(m-j) B2^(n-k) X A1^(m-j) A2^k
            - AbstractDoubleSum: sum (-1)^(j+k) C(m,j) C(n,k) B1^(m-j) B2^(n-k) X A2^(n-k) A1^j

    Returns:
        CMatrix: The transformed matrix. The first three orders agree
        whenever [A1,A2] = [B1,B2] = 0; commutation is never assumed here.

    Raises:
        DimensionMismatchError: If the dims differ.
        OrderTooLargeError: If m or n exceeds 62.
    """
    return compose_mn_scaled(B1, A1, B2, A2, X, m, n, order)[0]


# Superoperators

def _delta_superop_array(B: CMatrix, A: CMatrix, n: int, max_dim: int) -> np.ndarray:
    Bp, Ap = powers(B, n), powers(A, n)
    total = np.zeros((B.dim ** 2, B.dim ** 2), dtype=np.complex128)
    for j in range(n + 1):
        total += float((-1) ** j * comb(n, j)) * kron(Ap[j].T, Bp[n - j], max_dim=max_dim).data
    return total


def _triangle_superop_array(B: CMatrix, A: CMatrix, m: int, max_dim: int) -> np.ndarray:
    Bp, Ap = powers(B, m), powers(A, m)
    total = np.zeros((B.dim ** 2, B.dim ** 2), dtype=np.complex128)
    for j in range(m + 1):
        total += float((-1) ** j * comb(m, j)) * kron(Ap[m - j].T, Bp[m - j], max_dim=max_dim).data
    return total


def as_superop(kind: SuperOpKind, operands: Sequence[CMatrix], orders: Sequence[int]) -> SuperOp:
    """
    Realize a transform as a d^2 x d^2 matrix on vec(X).

    Parameters:
        kind (SuperOpKind): Delta, Triangle or ComposeMN.
        operands (Sequence[CMatrix]): (B, A) for Delta/Triangle,
            (B1, A1, B2, A2) for ComposeMN.
        orders (Sequence[int]): (n,), (m,) or (m, n) respectively.

    Returns:
        SuperOp: The map; ComposeMN is triangle composed after delta.

    Raises:
        DimensionTooLargeError: If d^2 exceeds the ``max_superop_dim`` setting.
    """
    from ..config import get_settings

    kind = SuperOpKind(kind)
    d = _common_dim(*operands)
    cap = get_settings().max_superop_dim
    if d * d > cap:
        raise DimensionTooLargeError(f"Superoperator dim {d * d} exceeds the cap {cap}")

    if kind is SuperOpKind.DELTA:
        (B, A), (n,) = operands, orders
        check_order(n, "n")
        return SuperOp(d, CMatrix(_delta_superop_array(B, A, n, cap)))
    if kind is SuperOpKind.TRIANGLE:
        (B, A), (m,) = operands, orders
        check_order(m, "m")
        return SuperOp(d, CMatrix(_triangle_superop_array(B, A, m, cap)))

    (B1, A1, B2, A2), (m, n) = operands, orders
    check_order(m, "m")
    check_order(n, "n")
    outer = _triangle_superop_array(B1, A1, m, cap)
    inner = _delta_superop_array(B2, A2, n, cap)
    return SuperOp(d, CMatrix(outer @ inner))


# Expansion identities

def product_delta_expansion(
    S: CMatrix, B: CMatrix, T: CMatrix, A: CMatrix, X: CMatrix, N: int
) -> Tuple[CMatrix, float]:
    """
    Right-hand side of the product expansion of delta^N_{SB,TA}(X):

        sum_j C(N,j) S^(N-j) delta^(N-j)_{B,A}(delta^j_{S,T}(X)) A^j

    valid when [S,B] = [T,A] = 0.
    """
    _common_dim(S, B, T, A, X)
    check_order(N, "N")
    Sp, Ap = powers(S, N), powers(A, N)
    total = np.zeros_like(X.data)
    scale = 0.0
    for j in range(N + 1):
        inner = delta_power(S, T, X, j)
        core, core_scale = delta_power_scaled(B, A, inner, N - j)
        term = Sp[N - j].data @ core.data @ Ap[j].data
        total += float(comb(N, j)) * term
        scale += comb(N, j) * max(_fro(term), core_scale * _fro(Sp[N - j].data) * _fro(Ap[j].data))
    return CMatrix(total), scale


def product_triangle_expansion(
    S: CMatrix, B: CMatrix, T: CMatrix, A: CMatrix, X: CMatrix, N: int
) -> Tuple[CMatrix, float]:
    """
    Right-hand side of the product expansion of triangle^N_{SB,TA}(X):

        sum_k C(N,k) S^(N-k) triangle^(N-k)_{B,A}(triangle^k_{S,T}(X)) T^(N-k)

    valid when [S,B] = [T,A] = 0.
    """
    _common_dim(S, B, T, A, X)
    check_order(N, "N")
    Sp, Tp = powers(S, N), powers(T, N)
    total = np.zeros_like(X.data)
    scale = 0.0
    for k in range(N + 1):
        inner = triangle_power(S, T, X, k)
        core, core_scale = triangle_power_scaled(B, A, inner, N - k)
        term = Sp[N - k].data @ core.data @ Tp[N - k].data
        total += float(comb(N, k)) * term
        scale += comb(N, k) * max(_fro(term), core_scale * _fro(Sp[N - k].data) * _fro(Tp[N - k].data))
    return CMatrix(total), scale


def perturbed_triangle_expansion(
    B: CMatrix, A: CMatrix, N: CMatrix, X: CMatrix, K: int
) -> Tuple[CMatrix, float]:
    """
    Right-hand side of triangle^K_{B,A+N}(X) = sum_j C(K,j) (L_B R_N)^j triangle^(K-j)_{B,A}(X),
    valid when [A,N] = 0.
    """
    _common_dim(B, A, N, X)
    check_order(K, "K")
    Bp, Np = powers(B, K), powers(N, K)
    total = np.zeros_like(X.data)
    scale = 0.0
    for j in range(K + 1):
        core, core_scale = triangle_power_scaled(B, A, X, K - j)
        term = Bp[j].data @ core.data @ Np[j].data
        total += float(comb(K, j)) * term
        scale += comb(K, j) * max(_fro(term), core_scale * _fro(Bp[j].data) * _fro(Np[j].data))
    return CMatrix(total), scale


def perturbed_delta_expansion(
    B: CMatrix, A: CMatrix, N: CMatrix, X: CMatrix, K: int
) -> Tuple[CMatrix, float]:
    """
    Right-hand side of delta^K_{B,A+N}(X) = sum_j (-1)^j C(K,j) R_N^j delta^(K-j)_{B,A}(X),
    valid when [A,N] = 0.
    """
    _common_dim(B, A, N, X)
    check_order(K, "K")
    Np = powers(N, K)
    total = np.zeros_like(X.data)
    scale = 0.0
    for j in range(K + 1):
        core, core_scale = delta_power_scaled(B, A, X, K - j)
        term = core.data @ Np[j].data
        total += float((-1) ** j * comb(K, j)) * term
        scale += comb(K, j) * max(_fro(term), core_scale * _fro(Np[j].data))
    return CMatrix(total), scale
