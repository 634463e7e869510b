"""
Core-nilpotent decomposition model.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from .matrix import CMatrix


@dataclass(frozen=True)
class DrazinDecomposition:
    """
    Similarity T = S (T1 (+) T2) S^-1 with T1 invertible and T2 nilpotent.

    Either block may be empty: an invertible T has no nilpotent block
    (``T2 is None``), a nilpotent T has no core (``T1 is None``).

    Attributes:
        T (CMatrix): The decomposed matrix.
        S (CMatrix): Basis matrix, range(T^p) columns first, then null(T^p).
        T1 (Optional[CMatrix]): Invertible core block (dim d1).
        T2 (Optional[CMatrix]): Nilpotent block (dim d - d1).
        p (int): Drazin index (>= 1).
        Td (CMatrix): Drazin inverse S (T1^-1 (+) 0) S^-1.
        residuals (Dict[str, float]): Decomposition and axiom residual norms.
    """

    T: CMatrix
    S: CMatrix
    T1: Optional[CMatrix]
    T2: Optional[CMatrix]
    p: int
    Td: CMatrix
    residuals: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValueError(f"Drazin index must be >= 1, got {self.p}")
        if self.core_dim + self.nilpotent_dim != self.T.dim:
            raise ValueError(
                f"Block dims {self.core_dim} + {self.nilpotent_dim} != {self.T.dim}"
            )

    @property
    def core_dim(self) -> int:
        return 0 if self.T1 is None else self.T1.dim

    @property
    def nilpotent_dim(self) -> int:
        return 0 if self.T2 is None else self.T2.dim

    def to_json(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "core_dim": self.core_dim,
            "S": self.S.to_json(),
            "T1": None if self.T1 is None else self.T1.to_json(),
            "T2": None if self.T2 is None else self.T2.to_json(),
            "Td": self.Td.to_json(),
            "residuals": dict(self.residuals),
        }
