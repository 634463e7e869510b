"""
Shared pieces of the verification harness: residual builders for the
conclusion checks and the report constructor every verifier uses.
"""

import time
from typing import Callable, List, Sequence

from ..algorithms.classifiers import pair_residual
from ..algorithms.elementary_ops import ComposeOrder, compose_mn_scaled
from ..models.instances import InstanceBundle
from ..models.matrix import CMatrix
from ..models.reports import Residual, VerificationReport
from ..models.tolerance import ToleranceContext
from ..utils.matrix_ops import fro_norm


def pair_conclusion(
    label: str,
    B1: CMatrix,
    A1: CMatrix,
    B2: CMatrix,
    A2: CMatrix,
    X: CMatrix,
    m: int,
    n: int,
    tol: ToleranceContext,
) -> Residual:
    """Composed residual at (m, n), worst of both nesting orders."""
    report = pair_residual(B1, A1, B2, A2, X, m, n, tol)
    return Residual.zero(f"{label}@({m},{n})", report.residual, report.scale, tol)


def ordered_conclusion(
    label: str,
    B1: CMatrix,
    A1: CMatrix,
    B2: CMatrix,
    A2: CMatrix,
    X: CMatrix,
    m: int,
    n: int,
    order: ComposeOrder,
    tol: ToleranceContext,
) -> Residual:
    """Composed residual at (m, n) in one nesting order only."""
    value, scale = compose_mn_scaled(B1, A1, B2, A2, X, m, n, order)
    return Residual.zero(f"{label}:{ComposeOrder(order).value}@({m},{n})", fro_norm(value), scale, tol)


def below_finding(
    label: str,
    B1: CMatrix,
    A1: CMatrix,
    B2: CMatrix,
    A2: CMatrix,
    X: CMatrix,
    m: int,
    n: int,
    tol: ToleranceContext,
) -> List[Residual]:
    """Residuals one order below (m, n) in each coordinate, for the record."""
    findings = []
    if m > 1:
        findings.append(pair_conclusion(f"{label}:below", B1, A1, B2, A2, X, m - 1, n, tol))
    if n > 1:
        findings.append(pair_conclusion(f"{label}:below", B1, A1, B2, A2, X, m, n - 1, tol))
    return findings


def identity_residual(label: str, lhs: CMatrix, rhs: CMatrix, scale: float, tol: ToleranceContext) -> Residual:
    """lhs = rhs within tolerance at the given scale."""
    return Residual.zero(label, fro_norm(lhs - rhs), scale, tol)


def report_for(
    result_id: str,
    bundle: InstanceBundle,
    hypotheses: Sequence[Residual] = (),
    conclusions: Sequence[Residual] = (),
    findings: Sequence[Residual] = (),
    notes: Sequence[str] = (),
) -> VerificationReport:
    """Build a report keyed by the bundle's seed and dimension."""
    return VerificationReport.build(
        result_id, bundle.spec.seed, bundle.dim, hypotheses, conclusions, findings, notes
    )


def timed(build: Callable[[], List[VerificationReport]]) -> List[VerificationReport]:
    """Run a verifier and stamp the elapsed time on every report it returns."""
    start = time.perf_counter()
    reports = build()
    elapsed = (time.perf_counter() - start) * 1000.0
    for report in reports:
        report.runtime_ms = elapsed / max(len(reports), 1)
    return reports
