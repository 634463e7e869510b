"""
Sharpness cells: instances whose stated order is attained and not beaten.

Each cell checks that the transform vanishes at order k and is strictly
nonzero at order k - 1, strictness meaning the residual exceeds the
``strictness_factor`` setting times its threshold.
"""

import logging
from typing import List, Optional

from ..algorithms.classifiers import OrderKind, order_residual
from ..algorithms.generators import isometry_plus_nilpotent_instance, jordan_block, mr_symmetric_instance
from ..config import get_settings
from ..models.errors import GenerationFailedError
from ..models.instances import GeneratorFamily, GenSpec
from ..models.matrix import CMatrix
from ..models.reports import Residual, VerificationReport
from ..models.tolerance import ToleranceContext, resolve_tolerance

logger = logging.getLogger(__name__)

SHARP_NILPOTENT_INDICES = (2, 3, 4)


def sharp_residuals(
    kind: OrderKind, B: CMatrix, A: CMatrix, X: CMatrix, k: int, tol: ToleranceContext, label: str = ""
) -> List[Residual]:
    """Zero residual at k and strictly nonzero residual at k - 1."""
    factor = get_settings().strictness_factor
    name = label or kind.value
    at = order_residual(kind, B, A, X, k, tol)
    below = order_residual(kind, B, A, X, k - 1, tol)
    return [
        Residual.zero(f"{name}^{k}", at.residual, at.scale, tol),
        Residual.nonzero(f"{name}^{k - 1}", below.residual, below.scale, tol, factor),
    ]


def _jordan_cells(tol: ToleranceContext) -> List[VerificationReport]:
    J = jordan_block(1, 2)
    I = CMatrix.identity(2)
    return [
        VerificationReport.build(
            "sharp-iso3", 0, 2, conclusions=sharp_residuals(OrderKind.TRIANGLE, J.H, J, I, 3, tol, "triangle{J*,J}")
        ),
        VerificationReport.build(
            "sharp-sym3", 0, 2, conclusions=sharp_residuals(OrderKind.DELTA, J.H, J, I, 3, tol, "delta{J*,J}")
        ),
    ]


def _perturbation_cells(tol: ToleranceContext) -> List[VerificationReport]:
    # triangle^k_{I,I+M}(I) = M^k for M = J_k(0)
    reports = []
    for k in SHARP_NILPOTENT_INDICES:
        I = CMatrix.identity(k)
        A = I + jordan_block(0, k)
        reports.append(VerificationReport.build(
            f"sharp-thm2-k{k}", 0, k,
            conclusions=sharp_residuals(OrderKind.TRIANGLE, I, A, I, k, tol, "triangle{I,I+J}"),
            notes=[f"nilpotent index {k}"],
        ))
    return reports


def fixed_sharpness_cells(tol: Optional[ToleranceContext] = None) -> List[VerificationReport]:
    """Seed-independent cells: the 2x2 Jordan block and the nilpotent perturbations."""
    tol = resolve_tolerance(tol)
    return _jordan_cells(tol) + _perturbation_cells(tol)


def seeded_sharpness_cells(seed: int, tol: Optional[ToleranceContext] = None) -> List[VerificationReport]:
    """
    Generated cells for one seed: A + N with real A (symmetry) and with
    unitary A (isometry), N of index n in 2..4, both at order 2n - 1 on
    dimension 2n.
    """
    tol = resolve_tolerance(tol)
    reports = []
    for n in SHARP_NILPOTENT_INDICES:
        dim = 2 * n
        for result_id, family, make, kind in (
            (f"sharp-mr-n{n}", GeneratorFamily.MR, mr_symmetric_instance, OrderKind.DELTA),
            (f"sharp-isonil-n{n}", GeneratorFamily.ISONIL, isometry_plus_nilpotent_instance, OrderKind.TRIANGLE),
        ):
            spec = GenSpec(seed=seed, dim=dim, family=family, params={"n": n})
            try:
                A, order = make(spec, tol)
            except GenerationFailedError as exc:
                logger.warning("%s seed=%d: %s", result_id, seed, exc)
                reports.append(VerificationReport.build(
                    result_id, seed, dim,
                    hypotheses=[Residual.zero("generation-certified", 1.0, 0.0, tol)],
                    notes=[str(exc)],
                ))
                continue
            reports.append(VerificationReport.build(
                result_id, seed, dim,
                conclusions=sharp_residuals(kind, A.H, A, CMatrix.identity(dim), order, tol, f"{kind.value}{{A*,A}}"),
                notes=[f"expected order {order}"],
            ))
    return reports
