"""
Matrix-core operations for the isosym toolkit.

Ring operations, commutators, Kronecker products, norms and numerical rank
on CMatrix values. All functions are pure and return new matrices.
"""

from typing import List, Optional, Sequence

import numpy as np
import scipy.linalg

from ..models.errors import DimensionMismatchError, DimensionTooLargeError
from ..models.matrix import CMatrix
from ..models.tolerance import ToleranceContext, resolve_tolerance


def _check_dims(*matrices: CMatrix) -> int:
    """Return the common dimension or raise DimensionMismatchError."""
    dims = {M.dim for M in matrices}
    if len(dims) != 1:
        raise DimensionMismatchError(f"Operands have mismatched dims {sorted(dims)}")
    return dims.pop()


def identity(dim: int) -> CMatrix:
    return CMatrix.identity(dim)


def add(A: CMatrix, B: CMatrix) -> CMatrix:
    return A + B


def sub(A: CMatrix, B: CMatrix) -> CMatrix:
    return A - B


def matmul(A: CMatrix, B: CMatrix) -> CMatrix:
    return A @ B


def scalar_multiply(c: complex, A: CMatrix) -> CMatrix:
    return A * complex(c)


def adjoint(A: CMatrix) -> CMatrix:
    """Conjugate transpose."""
    return A.H


def power(A: CMatrix, k: int) -> CMatrix:
    """
    Integer power A^k for k >= 0; power(A, 0) is the identity.

    Raises:
        ValueError: If k is negative.
    """
    if k < 0:
        raise ValueError(f"Matrix power must be nonnegative, got {k}")
    return CMatrix(np.linalg.matrix_power(A.data, k))


def powers(A: CMatrix, k: int) -> List[CMatrix]:
    """Return [A^0, A^1, ..., A^k] by repeated multiplication."""
    result = [CMatrix.identity(A.dim)]
    for _ in range(k):
        result.append(result[-1] @ A)
    return result


def commutator(A: CMatrix, B: CMatrix) -> CMatrix:
    """
    Return AB - BA.

    Raises:
        DimensionMismatchError: If A and B have different dims.
    """
    _check_dims(A, B)
    return A @ B - B @ A


def kron(A: CMatrix, B: CMatrix, max_dim: Optional[int] = None) -> CMatrix:
    """
    Kronecker product with a result-dimension guard.

    Parameters:
        A (CMatrix): Left factor.
        B (CMatrix): Right factor.
        max_dim (Optional[int]): Largest allowed result dimension; defaults
            to the ``max_kron_dim`` setting (64).

    Returns:
        CMatrix: A (x) B of dimension dim(A) * dim(B).

    Raises:
        DimensionTooLargeError: If the result would exceed ``max_dim``.
    """
    if max_dim is None:
        from ..config import get_settings

        max_dim = get_settings().max_kron_dim
    result_dim = A.dim * B.dim
    if result_dim > max_dim:
        raise DimensionTooLargeError(
            f"Kronecker product dim {result_dim} exceeds the cap {max_dim}"
        )
    return CMatrix(np.kron(A.data, B.data))


def direct_sum(*blocks: CMatrix) -> CMatrix:
    """Block-diagonal matrix of the given blocks."""
    return CMatrix(scipy.linalg.block_diag(*[b.data for b in blocks]))


def inverse(A: CMatrix) -> CMatrix:
    """Matrix inverse (raises numpy/scipy LinAlgError if singular)."""
    return CMatrix(scipy.linalg.inv(A.data))


def fro_norm(A: CMatrix) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(A.data, "fro"))


def spectral_norm(A: CMatrix) -> float:
    """Operator 2-norm (largest singular value)."""
    return float(np.linalg.norm(A.data, 2))


def singular_values(A: CMatrix) -> np.ndarray:
    return scipy.linalg.svdvals(A.data)


def rank(A: CMatrix, tol: Optional[ToleranceContext] = None) -> int:
    """
    Numerical rank: singular values above ``atol + rtol * sigma_max``.

    Examples:
        >>> rank(CMatrix.from_rows([[1, 1], [0, 0]]))
        1
    """
    tol = resolve_tolerance(tol)
    sigma = singular_values(A)
    cutoff = tol.atol + tol.rtol * (sigma[0] if sigma.size else 0.0)
    return int(np.sum(sigma > cutoff))


def is_nilpotent_exact(A: CMatrix, k: int) -> bool:
    """True iff A^k is exactly the zero matrix."""
    return not np.any(power(A, k).data)


def nilpotency_index(A: CMatrix, tol: Optional[ToleranceContext] = None) -> Optional[int]:
    """
    Smallest k with ||A^k||_F below tolerance (scale ||A||_F^k), or None.
    """
    tol = resolve_tolerance(tol)
    norm = max(fro_norm(A), 1.0)
    P = CMatrix.identity(A.dim)
    for k in range(1, A.dim + 1):
        P = P @ A
        if tol.is_zero(fro_norm(P), norm ** k):
            return k
    return None


def max_commutator_norm(pairs: Sequence[tuple]) -> float:
    """Largest Frobenius norm of [A, B] over the given pairs."""
    return max((fro_norm(commutator(a, b)) for a, b in pairs), default=0.0)
