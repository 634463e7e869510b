"""
Drazin-inverse theorem for isosymmetric operators.

With the core-nilpotent splitting A = S (T1 (+) T2) S^-1 and Drazin inverse
Ad, an (X,(m,n))-isosymmetric A forces the corner blocks X12, X21 to vanish
and the core block satisfies

    (i)   triangle^n_{T1^-*,T1}(triangle^m_{T1^-*,T1^-1}(X11)) = 0
          delta^m_{T1^-*,T1}(delta^n_{T1^-*,T1^-1}(X11))        = 0
    (ii)  triangle^n_{T1^-*,T1}(triangle^m_{T1*,T1^-1}(X11))    = 0
          when ((Ad*,A),(A*,A)) is left-(X,(m,n))-symmetric
    (iii) delta^n_{T1*,T1^-1}(delta^m_{T1^-*,T1}(X11))          = 0
          when ((A*,A),(Ad*,A)) is left-(X,(m,n))-symmetric

These core forms gate the verdicts. Two other readings of each conclusion
are evaluated and recorded as findings: the full-space statement form
written with A, Ad, and the full-space form with the outer operator
C = A^2 Ad (the core T1 extended by zero). Disagreements between forms are
logged as warnings, never failures.

The block equations check that for block-diagonal X the full-space
residual of each displayed transform is the direct sum of the blockwise
residuals.
"""

import logging
from math import comb
from typing import List, Optional, Tuple

import numpy as np

from ..algorithms.classifiers import pair_residual
from ..algorithms.drazin import core_nilpotent, decomposition_checks
from ..algorithms.elementary_ops import (
    ComposeOrder,
    compose_mn_scaled,
    delta_power_scaled,
    triangle_power_scaled,
)
from ..algorithms.hypotheses import check_bundle, composite
from ..models.decomposition import DrazinDecomposition
from ..models.instances import InstanceBundle
from ..models.matrix import CMatrix
from ..models.reports import Residual, VerificationReport
from ..models.tolerance import ToleranceContext, resolve_tolerance
from ..utils.matrix_ops import direct_sum, fro_norm, inverse, powers, spectral_norm
from .common import report_for

logger = logging.getLogger(__name__)


def _decomposition(bundle: InstanceBundle, tol: ToleranceContext) -> DrazinDecomposition:
    return bundle.decomposition if bundle.decomposition is not None else core_nilpotent(bundle["A"], tol)


def to_split_basis(dec: DrazinDecomposition, M: CMatrix) -> CMatrix:
    """S^-1 M S."""
    return CMatrix(np.linalg.solve(dec.S.data, M.data @ dec.S.data))


def from_split_basis(dec: DrazinDecomposition, M: CMatrix) -> CMatrix:
    """S M S^-1."""
    return CMatrix(dec.S.data @ np.linalg.solve(dec.S.data.T, M.data.T).T)


def corner_blocks(dec: DrazinDecomposition, X: CMatrix) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(X11, X12, X21, X22) of X in the splitting basis."""
    Y = to_split_basis(dec, X).data
    d1 = dec.core_dim
    return Y[:d1, :d1], Y[:d1, d1:], Y[d1:, :d1], Y[d1:, d1:]


def orthogonal_splitting(dec: DrazinDecomposition, tol: ToleranceContext) -> Residual:
    """S*S = I: the core and nilpotent subspaces are orthogonal."""
    gram = dec.S.H @ dec.S
    identity = CMatrix.identity(dec.S.dim)
    return Residual.zero("S*S-I", fro_norm(gram - identity), fro_norm(gram) + fro_norm(identity), tol)


def corner_residual(dec: DrazinDecomposition, X: CMatrix, tol: ToleranceContext) -> Residual:
    """X12 = X21 = 0 in the splitting basis."""
    _, X12, X21, _ = corner_blocks(dec, X)
    value = float(np.linalg.norm(X12, "fro") + np.linalg.norm(X21, "fro"))
    return Residual.zero("X12+X21", value, fro_norm(X), tol)


# Nested transforms

def _gain(kind: str, B: CMatrix, A: CMatrix, k: int) -> float:
    """sum_j C(k,j) ||B^(k-j)||_2 ||A^i||_2, i = k-j for triangle and j for delta."""
    Bp, Ap = powers(B, k), powers(A, k)
    total = 0.0
    for j in range(k + 1):
        right = Ap[k - j] if kind == "triangle" else Ap[j]
        total += comb(k, j) * spectral_norm(Bp[k - j]) * spectral_norm(right)
    return total


_SCALED = {"triangle": triangle_power_scaled, "delta": delta_power_scaled}


def nested_residual(
    label: str,
    outer: Tuple[str, CMatrix, CMatrix, int],
    inner: Tuple[str, CMatrix, CMatrix, int],
    X: CMatrix,
    tol: ToleranceContext,
) -> Residual:
    """
    Residual of outer(inner(X)) for two single-pair transforms.

    ``outer`` and ``inner`` are (kind, B, A, order) with kind "triangle" or
    "delta". The scale is the inner term-magnitude sum times the outer
    binomial gain.
    """
    okind, Bo, Ao, ko = outer
    ikind, Bi, Ai, ki = inner
    value, inner_scale = _SCALED[ikind](Bi, Ai, X, ki)
    result, outer_scale = _SCALED[okind](Bo, Ao, value, ko)
    scale = max(outer_scale, _gain(okind, Bo, Ao, ko) * inner_scale)
    return Residual.zero(label, fro_norm(result), scale, tol)


class _Split:
    """Operators of one Drazin instance, full space and core block."""

    def __init__(self, bundle: InstanceBundle, tol: ToleranceContext):
        self.bundle = bundle
        self.dec = _decomposition(bundle, tol)
        self.A = bundle["A"]
        self.X = bundle["X"]
        self.m, self.n = bundle.order("m"), bundle.order("n")
        self.Ad = self.dec.Td
        self.C = self.A @ self.A @ self.Ad
        X11, _, _, X22 = corner_blocks(self.dec, self.X)
        self.X11 = CMatrix(X11) if self.dec.T1 is not None else None
        self.X22 = CMatrix(X22) if self.dec.T2 is not None else None
        self.T1 = self.dec.T1
        self.T2 = self.dec.T2
        if self.T1 is not None:
            self.T1i = inverse(self.T1)
            self.T1is = self.T1i.H

    @property
    def has_core(self) -> bool:
        return self.T1 is not None


def _drazin_zero(s: _Split, tol: ToleranceContext) -> Residual:
    return Residual.zero("Ad", fro_norm(s.Ad), fro_norm(s.A) + 1.0, tol)


def core_forms(s: _Split, part: str, tol: ToleranceContext) -> List[Residual]:
    """Core-block conclusions of part "i", "ii" or "iii"."""
    if not s.has_core:
        return [_drazin_zero(s, tol)]
    T1, T1i, T1is, X11, m, n = s.T1, s.T1i, s.T1is, s.X11, s.m, s.n
    if part == "i":
        return [
            nested_residual("core:triangle-triangle", ("triangle", T1is, T1, n), ("triangle", T1is, T1i, m), X11, tol),
            nested_residual("core:delta-delta", ("delta", T1is, T1, m), ("delta", T1is, T1i, n), X11, tol),
        ]
    if part == "ii":
        return [nested_residual("core:triangle-triangle", ("triangle", T1is, T1, n), ("triangle", T1.H, T1i, m), X11, tol)]
    return [nested_residual("core:delta-delta", ("delta", T1.H, T1i, n), ("delta", T1is, T1, m), X11, tol)]


def statement_forms(s: _Split, part: str, tol: ToleranceContext) -> List[Residual]:
    """Full-space readings with A and Ad."""
    A, Ad, X, m, n = s.A, s.Ad, s.X, s.m, s.n
    if part == "i":
        return [
            nested_residual("statement:triangle-triangle", ("triangle", Ad.H, A, n), ("triangle", A.H, Ad, m), X, tol),
            nested_residual("statement:delta-delta", ("delta", Ad.H, A, m), ("delta", Ad.H, Ad, n), X, tol),
        ]
    if part == "ii":
        return [nested_residual("statement:triangle-triangle", ("triangle", Ad.H, A, n), ("triangle", A.H, Ad, m), X, tol)]
    return [nested_residual("statement:delta-delta", ("delta", A.H, Ad, n), ("delta", Ad.H, A, m), X, tol)]


def extended_forms(s: _Split, tol: ToleranceContext) -> List[Residual]:
    """Full-space readings of part (i) with the outer operator C = A^2 Ad."""
    Ad, C, X, m, n = s.Ad, s.C, s.X, s.m, s.n
    return [
        nested_residual("extended:triangle-triangle", ("triangle", Ad.H, C, n), ("triangle", Ad.H, Ad, m), X, tol),
        nested_residual("extended:delta-delta", ("delta", Ad.H, C, m), ("delta", Ad.H, Ad, n), X, tol),
    ]


def forcing_probe(s: _Split, tol: ToleranceContext, corner: Optional[float] = None) -> Optional[Residual]:
    """
    Perturb X by a corner block X12 in the splitting basis and require the
    hypothesis residual to exceed the strictness factor times its threshold.
    The corner entry is ``corner``, by default max(1, ||X||_F). None when
    either block is empty.
    """
    from ..config import get_settings

    d1 = s.dec.core_dim
    if d1 == 0 or d1 == s.A.dim:
        return None
    E = np.zeros((s.A.dim, s.A.dim), dtype=np.complex128)
    E[0, d1] = max(1.0, fro_norm(s.X)) if corner is None else corner
    probe = s.X + from_split_basis(s.dec, CMatrix(E))
    report = pair_residual(s.A.H, s.A, s.A.H, s.A, probe, s.m, s.n, tol)
    return Residual.nonzero(
        f"forcing:pair(A*A,A*A)@({s.m},{s.n})", report.residual, report.scale, tol,
        factor=get_settings().strictness_factor,
    )


def corner_forcing(
    bundle: InstanceBundle, corner: Optional[float] = None, tol: Optional[ToleranceContext] = None
) -> Optional[Residual]:
    """
    Forcing probe of a ``thm3`` bundle on its own.

    Examples:
        >>> bundle = generate(GenSpec(seed=0, dim=3, family="thm3", params={"p": 1}))
        >>> round(corner_forcing(bundle, corner=1.0).value, 9)   # A = diag(1,-1,0), X = I + e13
        1.0
    """
    tol = resolve_tolerance(tol)
    return forcing_probe(_Split(bundle, tol), tol, corner)


def _warn_discrepancies(s: _Split, part: str, gated: List[Residual], findings: List[Residual]) -> None:
    if all(r.passed for r in gated):
        for finding in findings:
            if not finding.passed:
                logger.warning(
                    "thm3(%s) seed=%d: %s residual %.3e while the core form holds",
                    part, s.bundle.spec.seed, finding.label, finding.value,
                )


# Verifiers

def _base_hypotheses(s: _Split, tol: ToleranceContext) -> List[Residual]:
    return [orthogonal_splitting(s.dec, tol)] + decomposition_checks(s.dec, tol)


def verify_theorem3(bundle: InstanceBundle, tol: Optional[ToleranceContext] = None) -> VerificationReport:
    """
    Verify part (i) on a ``thm3`` bundle.

    Conclusions: the corner blocks vanish, both core forms vanish and the
    forcing probe bounds the hypothesis residual away from zero. The
    statement and extended forms are findings.

    Raises:
        IllConditionedSplittingError: If the splitting cannot be computed.
    """
    tol = resolve_tolerance(tol)
    s = _Split(bundle, tol)
    hypotheses = check_bundle(bundle, tol) + [orthogonal_splitting(s.dec, tol)]
    conclusions = [corner_residual(s.dec, s.X, tol)] + core_forms(s, "i", tol)
    notes = [f"p={s.dec.p}", f"core_dim={s.dec.core_dim}"]
    probe = forcing_probe(s, tol)
    if probe is None:
        notes.append("forcing probe skipped: one block is empty")
    else:
        conclusions.append(probe)
    findings = statement_forms(s, "i", tol) + extended_forms(s, tol)
    _warn_discrepancies(s, "i", conclusions, findings)
    return report_for("thm3", bundle, hypotheses, conclusions, findings, notes)


def verify_theorem3_part(
    bundle: InstanceBundle, part: str, tol: Optional[ToleranceContext] = None
) -> VerificationReport:
    """
    Verify part (ii) or (iii) on a ``thm3`` bundle.

    The composite hypothesis of the part is checked on the bundle's X; an
    instance built for part (i) may legitimately be vacuous here.

    Raises:
        ValueError: If part is not "ii" or "iii".
    """
    if part not in ("ii", "iii"):
        raise ValueError(f"part must be 'ii' or 'iii', got {part!r}")
    tol = resolve_tolerance(tol)
    s = _Split(bundle, tol)
    A, Ad, X, m, n = s.A, s.Ad, s.X, s.m, s.n
    if part == "ii":
        hypothesis = composite("(Ad*A,A*A)", Ad.H, A, A.H, A, X, m, n, tol)
    else:
        hypothesis = composite("(A*A,Ad*A)", A.H, A, Ad.H, A, X, m, n, tol)
    hypotheses = _base_hypotheses(s, tol) + [hypothesis]
    conclusions = [corner_residual(s.dec, X, tol)] + core_forms(s, part, tol)
    findings = statement_forms(s, part, tol)
    _warn_discrepancies(s, part, conclusions, findings)
    return report_for(f"thm3-{part}", bundle, hypotheses, conclusions, findings)


def _block_operands(s: _Split, equation: str):
    """(B1, A1, B2, A2) on the full space, core block and nilpotent block."""
    A, Ad = s.A, s.Ad
    full = {
        "eq1": (A.H, A, A.H, A),
        "eq2": (Ad.H, A, A.H, A),
        "eq3": (A.H, A, Ad.H, A),
    }[equation]
    core = None
    if s.has_core:
        T1, T1is = s.T1, s.T1is
        core = {
            "eq1": (T1.H, T1, T1.H, T1),
            "eq2": (T1is, T1, T1.H, T1),
            "eq3": (T1.H, T1, T1is, T1),
        }[equation]
    nil = None
    if s.T2 is not None:
        T2 = s.T2
        zero = CMatrix.zeros(T2.dim)
        nil = {
            "eq1": (T2.H, T2, T2.H, T2),
            "eq2": (zero, T2, T2.H, T2),
            "eq3": (T2.H, T2, zero, T2),
        }[equation]
    return full, core, nil


def verify_block_equations(bundle: InstanceBundle, tol: Optional[ToleranceContext] = None) -> List[VerificationReport]:
    """
    ``eq1-block``, ``eq2-block`` and ``eq3-block``: S^-1 R S equals the
    direct sum of the blockwise residuals, for

        eq1  triangle^m_{A*,A}(delta^n_{A*,A}(X))
        eq2  triangle^m_{Ad*,A}(delta^n_{A*,A}(X))
        eq3  triangle^m_{A*,A}(delta^n_{Ad*,A}(X))

    Hypotheses: orthogonal splitting, decomposition checks and X block
    diagonal in the splitting basis.
    """
    tol = resolve_tolerance(tol)
    s = _Split(bundle, tol)
    hypotheses = _base_hypotheses(s, tol) + [corner_residual(s.dec, s.X, tol)]
    order = ComposeOrder.TRIANGLE_FIRST_OUTSIDE
    reports = []
    for equation in ("eq1", "eq2", "eq3"):
        full, core, nil = _block_operands(s, equation)
        value, scale = compose_mn_scaled(*full, s.X, s.m, s.n, order)
        blocks = []
        for operands, weight in ((core, s.X11), (nil, s.X22)):
            if operands is None:
                continue
            block, block_scale = compose_mn_scaled(*operands, weight, s.m, s.n, order)
            blocks.append(block)
            scale += block_scale
        expected = direct_sum(*blocks)
        residual = Residual.zero(
            f"{equation}:S^-1RS-(R1+R2)", fro_norm(to_split_basis(s.dec, value) - expected), scale, tol
        )
        reports.append(report_for(f"{equation}-block", bundle, hypotheses, [residual]))
    return reports


def verify_theorem3_all(bundle: InstanceBundle, tol: Optional[ToleranceContext] = None) -> List[VerificationReport]:
    """Part (i), parts (ii) and (iii), and the three block equations."""
    tol = resolve_tolerance(tol)
    return (
        [verify_theorem3(bundle, tol)]
        + [verify_theorem3_part(bundle, part, tol) for part in ("ii", "iii")]
        + verify_block_equations(bundle, tol)
    )
