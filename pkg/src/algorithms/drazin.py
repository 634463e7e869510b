"""
Drazin index, core-nilpotent decomposition and Drazin inverse.

The splitting H = H1 (+) H2 is read off the singular value decomposition of
T^p: H1 = range(T^p) and H2 = null(T^p), both T-invariant. In the basis S
made of orthonormal bases of the two subspaces,

    S^-1 T S = T1 (+) T2,   T1 invertible,   T2^p = 0,

and the Drazin inverse is Td = S (T1^-1 (+) 0) S^-1. No eigen-decomposition
of T is ever taken; only powers, ranks and ranges.
"""

import logging
from typing import List, Optional

import numpy as np
import scipy.linalg

from ..models.decomposition import DrazinDecomposition
from ..models.errors import IllConditionedSplittingError
from ..models.matrix import CMatrix
from ..models.reports import Residual
from ..models.tolerance import ToleranceContext, resolve_tolerance
from ..utils.matrix_ops import fro_norm, power, rank

logger = logging.getLogger(__name__)


def rank_sequence(T: CMatrix, tol: Optional[ToleranceContext] = None) -> List[int]:
    """Ranks of T^0, T^1, ..., T^(d+1)."""
    tol = resolve_tolerance(tol)
    ranks = [T.dim]
    P = CMatrix.identity(T.dim)
    for _ in range(T.dim + 1):
        P = P @ T
        ranks.append(rank(P, tol))
    return ranks


def drazin_index(T: CMatrix, tol: Optional[ToleranceContext] = None) -> int:
    """
    Least p >= 1 with rank(T^p) = rank(T^(p+1)).

    Invertible matrices get p = 1. The result never exceeds dim.

    Examples:
        >>> drazin_index(CMatrix.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]]))
        3
    """
    ranks = rank_sequence(T, tol)
    for p in range(1, len(ranks) - 1):
        if ranks[p] == ranks[p + 1]:
            return p
    return T.dim


def _block(array: np.ndarray) -> Optional[CMatrix]:
    return CMatrix(array) if array.shape[0] > 0 else None


def core_nilpotent(T: CMatrix, tol: Optional[ToleranceContext] = None) -> DrazinDecomposition:
    """
    Core-nilpotent decomposition of T.

    Parameters:
        T (CMatrix): Any square matrix.
        tol (Optional[ToleranceContext]): Rank and residual tolerance.

    Returns:
        DrazinDecomposition: S, T1, T2, p, Td and residual diagnostics
        (``decomposition``, ``off_diagonal``, ``nilpotent_power`` and the
        Drazin axioms ``commute``, ``idempotent``, ``index``).

    Raises:
        IllConditionedSplittingError: If S has condition number above the
            ``ill_conditioned_limit`` setting, or the extracted core is
            numerically singular.
    """
    from ..config import get_settings

    tol = resolve_tolerance(tol)
    limit = get_settings().ill_conditioned_limit
    d = T.dim
    p = drazin_index(T, tol)

    U, sigma, Vh = scipy.linalg.svd(power(T, p).data)
    cutoff = tol.atol + tol.rtol * (sigma[0] if sigma.size else 0.0)
    d1 = int(np.sum(sigma > cutoff))
    S = np.hstack([U[:, :d1], Vh[d1:].conj().T])

    cond = float(np.linalg.cond(S))
    if not np.isfinite(cond) or cond > limit:
        raise IllConditionedSplittingError(
            f"core-nilpotent basis has condition number {cond:.3e} > {limit:.1e}"
        )
    S_inv = scipy.linalg.inv(S)
    M = S_inv @ T.data @ S

    T1 = _block(M[:d1, :d1])
    T2 = _block(M[d1:, d1:])
    td_local = np.zeros((d, d), dtype=np.complex128)
    if T1 is not None:
        core_sigma = scipy.linalg.svdvals(T1.data)
        if core_sigma[-1] <= tol.threshold(core_sigma[0]):
            raise IllConditionedSplittingError(
                f"core block is numerically singular (sigma_min {core_sigma[-1]:.3e})"
            )
        td_local[:d1, :d1] = scipy.linalg.inv(T1.data)
    Td = CMatrix(S @ td_local @ S_inv)

    block = np.zeros_like(M)
    block[:d1, :d1] = M[:d1, :d1]
    block[d1:, d1:] = M[d1:, d1:]
    residuals = {
        "decomposition": float(np.linalg.norm(T.data - S @ block @ S_inv, "fro")),
        "off_diagonal": float(np.linalg.norm(M - block, "fro")),
        "nilpotent_power": 0.0 if T2 is None else fro_norm(power(T2, p)),
        "condition": cond,
    }
    for item in drazin_axiom_residuals(T, Td, p, tol):
        residuals[item.label] = item.value

    logger.debug("core-nilpotent: dim=%d core=%d index=%d cond=%.3e", d, d1, p, cond)
    return DrazinDecomposition(T=T, S=CMatrix(S), T1=T1, T2=T2, p=p, Td=Td, residuals=residuals)


def drazin_inverse(T: CMatrix, tol: Optional[ToleranceContext] = None) -> CMatrix:
    """
    Drazin inverse of T.

    Examples:
        >>> drazin_inverse(CMatrix.from_rows([[1, 1], [0, 0]]))  # idempotent: Td = T
    """
    return core_nilpotent(T, tol).Td


def drazin_axiom_residuals(
    T: CMatrix, Td: CMatrix, p: int, tol: Optional[ToleranceContext] = None
) -> List[Residual]:
    """
    Residuals of [Td,T] = 0, Td^2 T = Td, T^(p+1) Td = T^p and the derived
    Td T Td = Td, each scaled by the norms of its two sides.
    """
    tol = resolve_tolerance(tol)
    Tp = power(T, p)
    checks = [
        ("commute", Td @ T, T @ Td),
        ("idempotent", Td @ Td @ T, Td),
        ("index", power(T, p + 1) @ Td, Tp),
        ("reflexive", Td @ T @ Td, Td),
    ]
    return [
        Residual.zero(label, fro_norm(lhs - rhs), fro_norm(lhs) + fro_norm(rhs), tol)
        for label, lhs, rhs in checks
    ]


def decomposition_checks(
    decomposition: DrazinDecomposition, tol: Optional[ToleranceContext] = None
) -> List[Residual]:
    """
    Full invariant checklist of a decomposition: similarity, block
    structure, exact nilpotency order of T2 and the Drazin axioms.
    """
    tol = resolve_tolerance(tol)
    dec = decomposition
    scale_T = fro_norm(dec.T)
    results = [
        Residual.zero("decomposition", dec.residuals["decomposition"], scale_T, tol),
        Residual.zero("off_diagonal", dec.residuals["off_diagonal"], scale_T, tol),
    ]
    if dec.T2 is not None:
        t2_norm = max(fro_norm(dec.T2), 1.0)
        results.append(
            Residual.zero("nilpotent_power", fro_norm(power(dec.T2, dec.p)), t2_norm ** dec.p, tol)
        )
        if dec.p > 1:
            results.append(
                Residual.nonzero(
                    "nilpotent_order", fro_norm(power(dec.T2, dec.p - 1)), t2_norm ** (dec.p - 1), tol
                )
            )
    results.extend(drazin_axiom_residuals(dec.T, dec.Td, dec.p, tol))
    return results
