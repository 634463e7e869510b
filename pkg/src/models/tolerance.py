"""
Zero-test tolerance policy.

A residual matrix R is declared zero iff ``||R||_F <= atol + rtol * scale``,
where ``scale`` is computed per check by the caller. Throughout the toolkit
the scale is the sum of the Frobenius norms of the terms of the checked
binomial sum, which bounds the accumulated rounding of the sum.
"""

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class ToleranceContext:
    """
    Absolute/relative tolerance pair.

    Attributes:
        atol (float): Absolute tolerance (default 1e-12).
        rtol (float): Relative tolerance applied to the scale (default 1e-9).
    """

    atol: float = 1e-12
    rtol: float = 1e-9

    def __post_init__(self) -> None:
        if self.atol < 0 or self.rtol < 0:
            raise ValueError(
                f"Tolerances must be nonnegative, got atol={self.atol}, rtol={self.rtol}"
            )

    @classmethod
    def from_settings(
        cls, atol: Optional[float] = None, rtol: Optional[float] = None
    ) -> "ToleranceContext":
        """Build a context from the active settings, with optional overrides."""
        from ..config import get_settings

        settings = get_settings()
        return cls(
            atol=settings.atol if atol is None else atol,
            rtol=settings.rtol if rtol is None else rtol,
        )

    def threshold(self, scale: float) -> float:
        """Return ``atol + rtol * scale``."""
        return self.atol + self.rtol * max(scale, 0.0)

    def is_zero(self, residual: float, scale: float) -> bool:
        """True iff the residual norm passes the zero test at this scale."""
        return residual <= self.threshold(scale)

    def is_strictly_nonzero(self, residual: float, scale: float, factor: float = 1e3) -> bool:
        """True iff the residual exceeds ``factor`` times the threshold."""
        return residual > factor * self.threshold(scale)


def resolve_tolerance(tol: Optional[ToleranceContext]) -> ToleranceContext:
    """Return ``tol`` or the settings-based default."""
    return tol if tol is not None else ToleranceContext.from_settings()
