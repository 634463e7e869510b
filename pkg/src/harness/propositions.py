"""
Product results: the one-sided product proposition and its corollaries.

    prop1 (i)   ((B1,A1),(S B2,T A2))  at (m, n+t-1)
    prop1 (ii)  ((S B1,T A1),(B2,A2))  at (m+t-1, n)
    cor01       A B is (I,(m+r-1, n+s-1))-isosymmetric
    cor02       ((B1 S1,A1 T1),(B2 S2,A2 T2)) at (m+r-1, n+s-1)
    cor03       tensor pairs (E (x) P, F (x) Q) on X (x) X at (m+r-1, n+s-1)
    cor04       triangle^(2n-1)(delta^(2n-1)(I (x) I)) = 0 for S* (x) T*, S (x) T
    cor05       A + N is (X,(m+2n1-2, n+2n1-2))-isosymmetric
"""

import logging
from typing import List, Optional

from ..algorithms.elementary_ops import (
    delta_power_scaled,
    product_delta_expansion,
    product_triangle_expansion,
    triangle_power_scaled,
)
from ..algorithms.hypotheses import PROP1_PART_ONE, THEOREM1_ORDERS, check_bundle, cor04_checklist
from ..models.errors import ConfigurationError
from ..models.instances import GeneratorFamily, GenSpec, InstanceBundle
from ..models.matrix import CMatrix
from ..models.reports import Residual, VerificationReport
from ..models.tolerance import ToleranceContext, resolve_tolerance
from ..utils.matrix_ops import kron
from .common import below_finding, identity_residual, pair_conclusion, report_for
from .theorems import theorem1_orders

logger = logging.getLogger(__name__)


def product_expansion_checks(
    S: CMatrix, B: CMatrix, T: CMatrix, A: CMatrix, X: CMatrix, N: int, tol: ToleranceContext
) -> List[Residual]:
    """Product expansions of delta^N and triangle^N for (SB, TA) against direct evaluation."""
    direct, direct_scale = delta_power_scaled(S @ B, T @ A, X, N)
    expanded, scale = product_delta_expansion(S, B, T, A, X, N)
    checks = [identity_residual(f"expansion:delta^{N}", direct, expanded, direct_scale + scale, tol)]
    direct, direct_scale = triangle_power_scaled(S @ B, T @ A, X, N)
    expanded, scale = product_triangle_expansion(S, B, T, A, X, N)
    checks.append(identity_residual(f"expansion:triangle^{N}", direct, expanded, direct_scale + scale, tol))
    return checks


def verify_prop1(
    bundle: InstanceBundle, combo: Optional[str] = None, tol: Optional[ToleranceContext] = None
) -> VerificationReport:
    """
    Verify the product proposition on a ``prop1`` bundle.

    Parameters:
        bundle (InstanceBundle): Certified prop1 bundle.
        combo (Optional[str]): Hypothesis combination; defaults to the
            bundle's ``combo`` label and must agree with it.
        tol (Optional[ToleranceContext]): Zero-test tolerance.

    Returns:
        VerificationReport: result id ``prop1-<combo>``; the conclusion at
        the stated orders plus the product expansion identities, with the
        residuals one order lower recorded as findings.

    Raises:
        ConfigurationError: If ``combo`` disagrees with the bundle.
    """
    tol = resolve_tolerance(tol)
    bundle_combo = bundle.labels["combo"]
    combo = bundle_combo if combo is None else combo
    if combo != bundle_combo:
        raise ConfigurationError(f"bundle was generated for combo {bundle_combo}, not {combo}")

    hypotheses = check_bundle(bundle, tol)
    B1, A1, B2, A2, S, T, X = (bundle[k] for k in ("B1", "A1", "B2", "A2", "S", "T", "X"))
    m, n, t = bundle.order("m"), bundle.order("n"), bundle.order("t")

    if combo in PROP1_PART_ONE:
        args = (B1, A1, S @ B2, T @ A2, X, m, n + t - 1)
        conclusions = [pair_conclusion("((B1,A1),(SB2,TA2))", *args, tol)]
        conclusions += product_expansion_checks(S, B2, T, A2, X, n + t - 1, tol)
        findings = below_finding("((B1,A1),(SB2,TA2))", *args, tol)
    else:
        args = (S @ B1, T @ A1, B2, A2, X, m + t - 1, n)
        conclusions = [pair_conclusion("((SB1,TA1),(B2,A2))", *args, tol)]
        conclusions += product_expansion_checks(S, B1, T, A1, X, m + t - 1, tol)
        findings = below_finding("((SB1,TA1),(B2,A2))", *args, tol)
    return report_for(f"prop1-{combo}", bundle, hypotheses, conclusions, findings)


def _cor01(bundle: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    A, B = bundle["A"], bundle["B"]
    AB = A @ B
    m = bundle.order("m") + bundle.order("r") - 1
    n = bundle.order("n") + bundle.order("s") - 1
    return [pair_conclusion("(AB)*,AB", AB.H, AB, AB.H, AB, CMatrix.identity(A.dim), m, n, tol)]


def _cor02(bundle: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    g = bundle.matrices
    m = bundle.order("m") + bundle.order("r") - 1
    n = bundle.order("n") + bundle.order("s") - 1
    return [pair_conclusion(
        "((B1S1,A1T1),(B2S2,A2T2))",
        g["B1"] @ g["S1"], g["A1"] @ g["T1"], g["B2"] @ g["S2"], g["A2"] @ g["T2"], g["X"], m, n, tol,
    )]


def _cor03(bundle: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    g = bundle.matrices
    o = theorem1_orders({k: bundle.order(k) for k in THEOREM1_ORDERS})
    return [pair_conclusion(
        "((E1xP1,F1xQ1),(E2xP2,F2xQ2))",
        kron(g["E1"], g["P1"]), kron(g["F1"], g["Q1"]),
        kron(g["E2"], g["P2"]), kron(g["F2"], g["Q2"]),
        kron(g["X"], g["X"]), o["M"], o["N"], tol,
    )]


def _cor04(bundle: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    S, T = bundle["S"], bundle["T"]
    k = 2 * bundle.order("n") - 1
    L, R = kron(S.H, T.H), kron(S, T)
    return [pair_conclusion("S*xT*,SxT", L, R, L, R, CMatrix.identity(L.dim), k, k, tol)]


def _cor05(bundle: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    P = bundle["A"] + bundle["N"]
    n1 = bundle.order("n1")
    m = bundle.order("m") + 2 * n1 - 2
    n = bundle.order("n") + 2 * n1 - 2
    return [pair_conclusion("(A+N)*,A+N", P.H, P, P.H, P, bundle["X"], m, n, tol)]


COROLLARIES = {
    GeneratorFamily.COR01: _cor01,
    GeneratorFamily.COR02: _cor02,
    GeneratorFamily.COR03: _cor03,
    GeneratorFamily.COR04: _cor04,
    GeneratorFamily.COR05: _cor05,
}


def verify_corollaries(
    bundles: List[InstanceBundle], tol: Optional[ToleranceContext] = None
) -> List[VerificationReport]:
    """
    One report per corollary bundle, with result id equal to its family.

    Raises:
        ConfigurationError: If a bundle is not a corollary family.
    """
    tol = resolve_tolerance(tol)
    reports = []
    for bundle in bundles:
        try:
            conclude = COROLLARIES[bundle.family]
        except KeyError as exc:
            raise ConfigurationError(f"{bundle.family.value} is not a corollary family") from exc
        reports.append(report_for(bundle.family.value, bundle, check_bundle(bundle, tol), conclude(bundle, tol)))
    return reports


def cor04_jordan_bundle(n: int = 3) -> InstanceBundle:
    """The fixed Jordan instance S = T = [[1,1],[0,1]] at hypothesis order n."""
    J = CMatrix.from_rows([[1, 1], [0, 1]])
    spec = GenSpec(seed=0, dim=2, family=GeneratorFamily.COR04, params={"n": n})
    bundle = InstanceBundle(spec=spec, matrices={"S": J, "T": J}, orders={"n": n}, labels={"mode": "jordan"})
    bundle.hypotheses = cor04_checklist(bundle, resolve_tolerance(None))
    return bundle


def verify_cor04_jordan(n: int = 3, tol: Optional[ToleranceContext] = None) -> VerificationReport:
    """
    Tensor check on the Jordan instance: all hypotheses at order n, then the
    order 2n-1 composed transform on I (x) I. Reported as ``cor04-jordan``.
    """
    tol = resolve_tolerance(tol)
    bundle = cor04_jordan_bundle(n)
    hypotheses = cor04_checklist(bundle, tol)
    return report_for("cor04-jordan", bundle, hypotheses, _cor04(bundle, tol))
