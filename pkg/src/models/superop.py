"""
Superoperators: linear maps on d x d matrices realized as d^2 x d^2 matrices.

Vectorization is column-stacking, so the map X -> B X A is the matrix
kron(A^T, B) acting on vec(X).
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .matrix import CMatrix


def vec(X: CMatrix) -> np.ndarray:
    """Column-stacking vectorization of X."""
    return X.data.reshape(-1, order="F")


def unvec(v: np.ndarray, dim: int) -> CMatrix:
    """Inverse of :func:`vec`."""
    return CMatrix(np.asarray(v).reshape(dim, dim, order="F"))


@dataclass(frozen=True)
class SuperOp:
    """
    Linear map on d x d matrices.

    Attributes:
        base_dim (int): Dimension d of the matrices acted on.
        matrix (CMatrix): The d^2 x d^2 representing matrix on vec(X).
    """

    base_dim: int
    matrix: CMatrix

    def __post_init__(self) -> None:
        if self.matrix.dim != self.base_dim * self.base_dim:
            raise DimensionMismatchError(
                f"SuperOp matrix has dim {self.matrix.dim}, "
                f"expected {self.base_dim ** 2} for base dim {self.base_dim}"
            )

    @property
    def dim(self) -> int:
        """int: Dimension d^2 of the representing matrix."""
        return self.matrix.dim

    @classmethod
    def identity(cls, base_dim: int) -> "SuperOp":
        return cls(base_dim, CMatrix.identity(base_dim * base_dim))

    def apply(self, X: CMatrix) -> CMatrix:
        """Return unvec(matrix @ vec(X))."""
        if X.dim != self.base_dim:
            raise DimensionMismatchError(
                f"SuperOp acts on dim {self.base_dim}, got X of dim {X.dim}"
            )
        return unvec(self.matrix.data @ vec(X), self.base_dim)

    def compose(self, other: "SuperOp") -> "SuperOp":
        """Return the map X -> self(other(X))."""
        if other.base_dim != self.base_dim:
            raise DimensionMismatchError(
                f"Cannot compose superoperators on dims {self.base_dim} and {other.base_dim}"
            )
        return SuperOp(self.base_dim, self.matrix @ other.matrix)

    def power(self, k: int) -> "SuperOp":
        """Return the k-fold composition (k >= 0)."""
        if k < 0:
            raise ValueError(f"Power must be nonnegative, got {k}")
        return SuperOp(
            self.base_dim, CMatrix(np.linalg.matrix_power(self.matrix.data, k))
        )
