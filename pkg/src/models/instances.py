"""
Instance models: operator pairs, generator specifications and bundles.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .decomposition import DrazinDecomposition
from .errors import DimensionMismatchError
from .matrix import CMatrix
from .reports import Residual


def _commutator_norm(a: CMatrix, b: CMatrix) -> float:
    return float(np.linalg.norm(a.data @ b.data - b.data @ a.data, "fro"))


@dataclass(frozen=True)
class PairInstance:
    """
    The tuple (B1, A1, B2, A2, X, m, n) of a left-(X,(m,n))-symmetry question.

    Commutation certificates are never stored: ``commute_residuals`` is
    recomputed from the fields on every access.

    Attributes:
        B1, A1 (CMatrix): Pair acted on by the triangle transform.
        B2, A2 (CMatrix): Pair acted on by the delta transform.
        X (CMatrix): The weight operator.
        m (int): Triangle order (>= 1).
        n (int): Delta order (>= 1).
        extra_pairs (Tuple): Additional labeled (P, Q) commutation
            hypotheses supplied by generators.
    """

    B1: CMatrix
    A1: CMatrix
    B2: CMatrix
    A2: CMatrix
    X: CMatrix
    m: int
    n: int
    extra_pairs: Tuple[Tuple[str, CMatrix, CMatrix], ...] = ()

    def __post_init__(self) -> None:
        dims = {M.dim for M in (self.B1, self.A1, self.B2, self.A2, self.X)}
        dims.update(M.dim for _, P, Q in self.extra_pairs for M in (P, Q))
        if len(dims) != 1:
            raise DimensionMismatchError(f"PairInstance operands have dims {sorted(dims)}")
        if self.m < 1 or self.n < 1:
            raise ValueError(f"Orders must be positive, got m={self.m}, n={self.n}")

    @property
    def dim(self) -> int:
        return self.X.dim

    @property
    def commute_residuals(self) -> Dict[str, float]:
        """Frobenius norms of [A1,A2], [B1,B2] and every extra pair."""
        residuals = {
            "[A1,A2]": _commutator_norm(self.A1, self.A2),
            "[B1,B2]": _commutator_norm(self.B1, self.B2),
        }
        for label, P, Q in self.extra_pairs:
            residuals[label] = _commutator_norm(P, Q)
        return residuals

    def with_orders(self, m: int, n: int) -> "PairInstance":
        return PairInstance(self.B1, self.A1, self.B2, self.A2, self.X, m, n, self.extra_pairs)


class GeneratorFamily(str, Enum):
    """Instance families exposed by the generators and the ``gen`` command."""

    JORDAN = "jordan"
    UNITARY = "unitary"
    SELFADJOINT = "selfadjoint"
    COMMUTING = "commuting"
    MR = "mr"
    ISONIL = "isonil"
    LEMMAS = "lemmas"
    PROP1 = "prop1"
    COR01 = "cor01"
    COR02 = "cor02"
    COR03 = "cor03"
    COR04 = "cor04"
    COR05 = "cor05"
    THM1 = "thm1"
    THM2 = "thm2"
    THM3 = "thm3"


class GenSpec(BaseModel):
    """
    Deterministic generator request.

    Identical GenSpec values always produce identical instances.

    Attributes:
        seed (int): 64-bit unsigned seed.
        dim (int): Matrix dimension (at most the ``max_dim`` setting).
        family (GeneratorFamily): Which generator to run.
        params (Dict): Family-specific parameters (orders, nilpotency
            indices, block sizes, combo names).
    """

    model_config = ConfigDict(frozen=True)

    seed: int = Field(ge=0, lt=2 ** 64)
    dim: int = Field(ge=1)
    family: GeneratorFamily
    params: Dict[str, Union[int, str]] = Field(default_factory=dict)

    @field_validator("dim")
    @classmethod
    def validate_dim(cls, v: int) -> int:
        """Enforce the configured dimension cap."""
        from ..config import get_settings

        cap = get_settings().max_dim
        if v > cap:
            raise ValueError(f"dim {v} exceeds the configured cap {cap}")
        return v

    def param(self, name: str, default: Any = None) -> Any:
        return self.params.get(name, default)

    def int_param(self, name: str, default: int) -> int:
        value = self.params.get(name, default)
        try:
            return int(value)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"param {name} must be an integer, got {value!r}") from exc

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


@dataclass
class InstanceBundle:
    """
    A certified generator output: named matrices, orders and the hypothesis
    residuals that were checked before release.

    Attributes:
        spec (GenSpec): The request that produced the bundle.
        matrices (Dict[str, CMatrix]): Named operands.
        orders (Dict[str, int]): Named integer orders.
        hypotheses (List[Residual]): Certified hypothesis residuals.
        labels (Dict[str, str]): Free-form string metadata (combo names, modes).
        attempt (int): Seed retry index that produced the instance.
        decomposition (Optional[DrazinDecomposition]): Core-nilpotent
            sidecar for Drazin instances.
    """

    spec: GenSpec
    matrices: Dict[str, CMatrix]
    orders: Dict[str, int] = field(default_factory=dict)
    hypotheses: List[Residual] = field(default_factory=list)
    labels: Dict[str, str] = field(default_factory=dict)
    attempt: int = 0
    decomposition: Optional[DrazinDecomposition] = None

    def __getitem__(self, name: str) -> CMatrix:
        return self.matrices[name]

    def __contains__(self, name: str) -> bool:
        return name in self.matrices

    @property
    def family(self) -> GeneratorFamily:
        return self.spec.family

    @property
    def dim(self) -> int:
        return next(iter(self.matrices.values())).dim

    def order(self, name: str) -> int:
        return self.orders[name]

    def get(self, name: str, default: Optional[CMatrix] = None) -> Optional[CMatrix]:
        return self.matrices.get(name, default)

    def certified(self) -> bool:
        return all(h.passed for h in self.hypotheses)

    def manifest(self) -> Dict[str, Any]:
        """JSON manifest listing operands, orders and hypothesis residuals."""
        return {
            "spec": self.spec.to_json(),
            "attempt": self.attempt,
            "drazin": None if self.decomposition is None else "drazin.json",
            "matrices": {name: f"{name}.json" for name in self.matrices},
            "orders": dict(self.orders),
            "labels": dict(self.labels),
            "hypotheses": [h.model_dump(mode="json") for h in self.hypotheses],
        }
