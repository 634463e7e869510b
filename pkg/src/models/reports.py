"""
Report models.

Pydantic models for everything the toolkit emits as JSON: classifier
verdicts (ClassReport, Classification), labeled residuals, per-cell
verification reports and the aggregated suite report.
"""

from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .tolerance import ToleranceContext


class Verdict(str, Enum):
    """Outcome of one verification cell."""

    PASS = "pass"
    FAIL = "fail"
    VACUOUS = "vacuous"


class Expectation(str, Enum):
    """What a residual is expected to be."""

    ZERO = "zero"
    NONZERO = "nonzero"


class ClassReport(BaseModel):
    """
    Membership verdict for one operator class at one order.

    Serialized as ``{"class", "order", "residual", "scale", "verdict", ...}``.
    """

    model_config = ConfigDict(populate_by_name=True)

    class_label: str = Field(alias="class")
    order: Union[int, List[int]]
    residual: float = Field(ge=0.0)
    scale: float = Field(ge=0.0)
    threshold: float = Field(ge=0.0)
    verdict: bool
    witness_order: Optional[Union[int, List[int]]] = None
    flags: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_verdict(self) -> "ClassReport":
        """verdict must agree with residual <= threshold."""
        if self.verdict != (self.residual <= self.threshold):
            raise ValueError(
                f"verdict {self.verdict} inconsistent with residual "
                f"{self.residual} and threshold {self.threshold}"
            )
        return self

    @classmethod
    def measure(
        cls,
        class_label: str,
        order: Union[int, List[int]],
        residual: float,
        scale: float,
        tol: ToleranceContext,
        flags: Sequence[str] = (),
    ) -> "ClassReport":
        """Build a report, deriving threshold and verdict from ``tol``."""
        threshold = tol.threshold(scale)
        return cls(
            class_label=class_label,
            order=order,
            residual=residual,
            scale=scale,
            threshold=threshold,
            verdict=residual <= threshold,
            flags=list(flags),
        )

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True)


class Classification(BaseModel):
    """Result of classify_operator: grid reports plus minimal orders."""

    dim: int
    m_max: int
    n_max: int
    reports: List[ClassReport]
    minimal_isometry_order: Optional[int] = None
    minimal_symmetry_order: Optional[int] = None
    pareto_frontier: List[List[int]] = Field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True)


class Residual(BaseModel):
    """
    One labeled residual with its tolerance bookkeeping.

    ``passed`` means ``value <= threshold`` for ZERO expectations and
    ``value > factor * threshold`` for NONZERO expectations.
    """

    label: str
    value: float = Field(ge=0.0)
    scale: float = Field(ge=0.0)
    threshold: float = Field(ge=0.0)
    expect: Expectation = Expectation.ZERO
    factor: float = 1.0
    passed: bool

    @classmethod
    def zero(cls, label: str, value: float, scale: float, tol: ToleranceContext) -> "Residual":
        threshold = tol.threshold(scale)
        return cls(
            label=label,
            value=value,
            scale=scale,
            threshold=threshold,
            passed=value <= threshold,
        )

    @classmethod
    def nonzero(
        cls,
        label: str,
        value: float,
        scale: float,
        tol: ToleranceContext,
        factor: float = 1e3,
    ) -> "Residual":
        threshold = tol.threshold(scale)
        return cls(
            label=label,
            value=value,
            scale=scale,
            threshold=threshold,
            expect=Expectation.NONZERO,
            factor=factor,
            passed=value > factor * threshold,
        )


class VerificationReport(BaseModel):
    """
    Outcome of one harness cell.

    The verdict is ``pass`` iff every hypothesis and conclusion residual
    passes; a failed hypothesis makes the cell ``vacuous``, never ``fail``.
    Findings are recorded for evidence and never affect the verdict.
    """

    result_id: str
    seed: int
    dim: int
    hypotheses: List[Residual] = Field(default_factory=list)
    conclusions: List[Residual] = Field(default_factory=list)
    findings: List[Residual] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
    verdict: Verdict
    runtime_ms: Optional[float] = None

    @model_validator(mode="after")
    def check_verdict(self) -> "VerificationReport":
        if self.verdict != self.derive_verdict(self.hypotheses, self.conclusions):
            raise ValueError(f"verdict {self.verdict.value} inconsistent with residuals")
        return self

    @staticmethod
    def derive_verdict(hypotheses: Sequence[Residual], conclusions: Sequence[Residual]) -> Verdict:
        if not all(h.passed for h in hypotheses):
            return Verdict.VACUOUS
        if all(c.passed for c in conclusions):
            return Verdict.PASS
        return Verdict.FAIL

    @classmethod
    def build(
        cls,
        result_id: str,
        seed: int,
        dim: int,
        hypotheses: Sequence[Residual] = (),
        conclusions: Sequence[Residual] = (),
        findings: Sequence[Residual] = (),
        notes: Sequence[str] = (),
    ) -> "VerificationReport":
        """Assemble a report and derive its verdict."""
        return cls(
            result_id=result_id,
            seed=seed,
            dim=dim,
            hypotheses=list(hypotheses),
            conclusions=list(conclusions),
            findings=list(findings),
            notes=list(notes),
            verdict=cls.derive_verdict(hypotheses, conclusions),
        )

    @property
    def failed_conclusions(self) -> List[Residual]:
        return [c for c in self.conclusions if not c.passed]

    def to_json(self, include_timings: bool = False) -> Dict[str, Any]:
        exclude = None if include_timings else {"runtime_ms"}
        return self.model_dump(mode="json", exclude=exclude)


class SuiteReport(BaseModel):
    """Aggregate over all cells of a suite run."""

    config: Dict[str, Any]
    cells: List[VerificationReport]
    summary: Dict[str, int]

    @classmethod
    def from_cells(cls, config: Dict[str, Any], cells: Sequence[VerificationReport]) -> "SuiteReport":
        """Sort cells by (result_id, seed, dim) and count verdicts."""
        ordered = sorted(cells, key=lambda c: (c.result_id, c.seed, c.dim))
        summary = {v.value: 0 for v in Verdict}
        for cell in ordered:
            summary[cell.verdict.value] += 1
        return cls(config=config, cells=ordered, summary=summary)

    @property
    def exit_code(self) -> int:
        """0 when no non-vacuous failure occurred, else 1."""
        return 1 if self.summary.get(Verdict.FAIL.value, 0) else 0

    def to_json(self, include_timings: bool = False) -> Dict[str, Any]:
        return {
            "config": self.config,
            "cells": [c.to_json(include_timings) for c in self.cells],
            "summary": dict(self.summary),
        }
