"""
Square complex matrix model.

This module defines CMatrix, the immutable dense complex matrix that stands
in for every operator the toolkit manipulates (A, B, X, S, T, M, N and their
indexed variants), together with its JSON wire format:

    {"dim": d, "data": [[re, im], ...]}    row-major, length d*d
"""

import math
from dataclasses import dataclass
from numbers import Number
from typing import Any, Dict, Iterable, List, Sequence

import numpy as np

from .errors import DimensionMismatchError, MatrixFormatError


@dataclass(frozen=True, eq=False)
class CMatrix:
    """
    Immutable square complex matrix.

    The wrapped array is a private complex128 copy flagged read-only, so a
    CMatrix can be shared freely between threads and callers.

    Attributes:
        data (np.ndarray): d x d complex128 array (read-only).
    """

    data: np.ndarray

    def __post_init__(self) -> None:
        """
        Normalize and validate the wrapped array.

        Raises:
            ValueError: If the array is not square, empty or has non-finite entries.
        """
        array = np.array(self.data, dtype=np.complex128, copy=True)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValueError(f"CMatrix must be square, got shape {array.shape}")
        if array.shape[0] < 1:
            raise ValueError("CMatrix dimension must be positive")
        if not np.all(np.isfinite(array)):
            raise ValueError("CMatrix entries must be finite (no NaN/Inf)")
        array.setflags(write=False)
        object.__setattr__(self, "data", array)

    # Constructors

    @classmethod
    def identity(cls, dim: int) -> "CMatrix":
        """Return the d x d identity."""
        return cls(np.eye(dim, dtype=np.complex128))

    @classmethod
    def zeros(cls, dim: int) -> "CMatrix":
        """Return the d x d zero matrix."""
        return cls(np.zeros((dim, dim), dtype=np.complex128))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[complex]]) -> "CMatrix":
        """
        Build a matrix from nested row lists.

        Examples:
            >>> CMatrix.from_rows([[1, 1], [0, 1]]).dim
            2
        """
        return cls(np.array(rows, dtype=np.complex128))

    @classmethod
    def diag(cls, values: Iterable[complex]) -> "CMatrix":
        """Return the diagonal matrix with the given entries."""
        return cls(np.diag(np.array(list(values), dtype=np.complex128)))

    # Properties

    @property
    def dim(self) -> int:
        """int: Matrix dimension d."""
        return self.data.shape[0]

    @property
    def H(self) -> "CMatrix":
        """CMatrix: Conjugate transpose (adjoint)."""
        return CMatrix(self.data.conj().T)

    @property
    def T(self) -> "CMatrix":
        """CMatrix: Plain transpose."""
        return CMatrix(self.data.T)

    # Arithmetic

    def _check_same_dim(self, other: "CMatrix", op: str) -> None:
        if not isinstance(other, CMatrix):
            raise TypeError(f"Cannot {op} CMatrix and {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionMismatchError(
                f"Cannot {op} matrices of dims {self.dim} and {other.dim}"
            )

    def __add__(self, other: "CMatrix") -> "CMatrix":
        self._check_same_dim(other, "add")
        return CMatrix(self.data + other.data)

    def __sub__(self, other: "CMatrix") -> "CMatrix":
        self._check_same_dim(other, "subtract")
        return CMatrix(self.data - other.data)

    def __matmul__(self, other: "CMatrix") -> "CMatrix":
        self._check_same_dim(other, "multiply")
        return CMatrix(self.data @ other.data)

    def __mul__(self, scalar: Number) -> "CMatrix":
        if isinstance(scalar, CMatrix) or not isinstance(scalar, Number):
            return NotImplemented
        return CMatrix(self.data * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "CMatrix":
        return CMatrix(-self.data)

    def __eq__(self, other: object) -> bool:
        """Exact (bitwise value) equality."""
        if not isinstance(other, CMatrix):
            return NotImplemented
        return self.dim == other.dim and bool(np.array_equal(self.data, other.data))

    __hash__ = None

    def allclose(self, other: "CMatrix", atol: float = 1e-12) -> bool:
        """Entrywise closeness within an absolute tolerance."""
        self._check_same_dim(other, "compare")
        return bool(np.allclose(self.data, other.data, rtol=0.0, atol=atol))

    # Serialization

    def to_json(self) -> Dict[str, Any]:
        """
        Convert to the matrix JSON wire format.

        Returns:
            Dict[str, Any]: ``{"dim": d, "data": [[re, im], ...]}`` row-major.
        """
        flat = self.data.reshape(-1)
        return {
            "dim": self.dim,
            "data": [[float(z.real), float(z.imag)] for z in flat],
        }

    @classmethod
    def from_json(cls, obj: Any) -> "CMatrix":
        """
        Parse the matrix JSON wire format.

        Parameters:
            obj (Any): Decoded JSON value.

        Returns:
            CMatrix: The parsed matrix.

        Raises:
            MatrixFormatError: Naming the offending field on any violation.
        """
        if not isinstance(obj, dict):
            raise MatrixFormatError("expected an object with 'dim' and 'data'", "$")
        if "dim" not in obj:
            raise MatrixFormatError("missing field", "dim")
        if "data" not in obj:
            raise MatrixFormatError("missing field", "data")

        dim = obj["dim"]
        if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
            raise MatrixFormatError(f"must be a positive integer, got {dim!r}", "dim")

        data = obj["data"]
        if not isinstance(data, list):
            raise MatrixFormatError("must be a list of [re, im] pairs", "data")
        if len(data) != dim * dim:
            raise MatrixFormatError(
                f"expected {dim * dim} entries for dim {dim}, got {len(data)}", "data"
            )

        values: List[complex] = []
        for idx, pair in enumerate(data):
            if not isinstance(pair, list) or len(pair) != 2:
                raise MatrixFormatError("must be a [re, im] pair", f"data[{idx}]")
            parts = []
            for part_idx, part in enumerate(pair):
                field = f"data[{idx}][{part_idx}]"
                if isinstance(part, bool) or not isinstance(part, (int, float)):
                    raise MatrixFormatError(f"must be a number, got {part!r}", field)
                if not math.isfinite(part):
                    raise MatrixFormatError("must be finite", field)
                parts.append(float(part))
            values.append(complex(parts[0], parts[1]))

        return cls(np.array(values, dtype=np.complex128).reshape(dim, dim))

    def __repr__(self) -> str:
        return f"CMatrix(dim={self.dim})"

    def __str__(self) -> str:
        return np.array2string(self.data, precision=6, suppress_small=True)
