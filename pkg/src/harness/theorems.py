"""
Product and perturbation theorems.

Theorem 1 multiplies two left-symmetric pairs: under the four composite
hypotheses and the commutation hypotheses,

    ((S1 B1, T1 A1), (S2 B2, T2 A2))   is left-(X,(m+r-1, n+s-1))-symmetric

with m = max(m1,m2), n = max(n1,n2), r = max(r1,r2), s = max(s1,s2). The
proof expands both transforms binomially; every term (j,k) of the double
expansion vanishes by one of four case conditions, which are checked
individually.

Theorem 2 perturbs both pairs by commuting nilpotents:

    ((B1+N1, A1+M1), (B2+N2, A2+M2))   at (m+m1+n1-2, n+m2+n2-2).
"""

import logging
from typing import Dict, List, Optional

from ..algorithms.elementary_ops import (
    ComposeOrder,
    compose_mn_scaled,
    delta_power_scaled,
    perturbed_delta_expansion,
    perturbed_triangle_expansion,
    triangle_power_scaled,
)
from ..algorithms.hypotheses import THEOREM1_ORDERS, check_bundle
from ..models.instances import InstanceBundle
from ..models.matrix import CMatrix
from ..models.reports import Residual, VerificationReport
from ..models.tolerance import ToleranceContext, resolve_tolerance
from ..utils.matrix_ops import fro_norm
from .common import identity_residual, ordered_conclusion, pair_conclusion, report_for

logger = logging.getLogger(__name__)


def theorem1_orders(orders: Dict[str, int]) -> Dict[str, int]:
    """m, n, r, s and the conclusion orders M = m+r-1, N = n+s-1."""
    m = max(orders["m1"], orders["m2"])
    n = max(orders["n1"], orders["n2"])
    r = max(orders["r1"], orders["r2"])
    s = max(orders["s1"], orders["s2"])
    return {"m": m, "n": n, "r": r, "s": s, "M": m + r - 1, "N": n + s - 1}


def _term(
    label: str,
    B1: CMatrix, A1: CMatrix, B2: CMatrix, A2: CMatrix, X: CMatrix,
    j: int, k: int, tol: ToleranceContext,
) -> Residual:
    value, scale = compose_mn_scaled(B1, A1, B2, A2, X, j, k, ComposeOrder.TRIANGLE_FIRST_OUTSIDE)
    return Residual.zero(label, fro_norm(value), scale, tol)


def theorem1_term_checks(
    B1: CMatrix, A1: CMatrix, B2: CMatrix, A2: CMatrix,
    S1: CMatrix, T1: CMatrix, S2: CMatrix, T2: CMatrix,
    X: CMatrix, orders: Dict[str, int], tol: Optional[ToleranceContext] = None,
) -> List[Residual]:
    """
    The case condition of every term (j, k), 0 <= j <= M, 0 <= k <= N:

        j >= r,   k >= s:   triangle^j_{S1,T1}(delta^k_{S2,T2}(X))       = 0
        j <= r-1, k >= s:   triangle^(M-j)_{B1,A1}(delta^k_{S2,T2}(X))   = 0
        j >= r,   k <= s-1: triangle^j_{S1,T1}(delta^(N-k)_{B2,A2}(X))   = 0
        j <= r-1, k <= s-1: triangle^(M-j)_{B1,A1}(delta^(N-k)_{B2,A2}(X)) = 0
    """
    tol = resolve_tolerance(tol)
    o = theorem1_orders(orders)
    M, N, r, s = o["M"], o["N"], o["r"], o["s"]
    checks = []
    for j in range(M + 1):
        for k in range(N + 1):
            if j >= r and k >= s:
                checks.append(_term(f"term({j},{k}):S1T1xS2T2", S1, T1, S2, T2, X, j, k, tol))
            elif j < r and k >= s:
                checks.append(_term(f"term({j},{k}):B1A1xS2T2", B1, A1, S2, T2, X, M - j, k, tol))
            elif j >= r:
                checks.append(_term(f"term({j},{k}):S1T1xB2A2", S1, T1, B2, A2, X, j, N - k, tol))
            else:
                checks.append(_term(f"term({j},{k}):B1A1xB2A2", B1, A1, B2, A2, X, M - j, N - k, tol))
    return checks


def verify_theorem1(
    bundle: InstanceBundle, tol: Optional[ToleranceContext] = None, term_checks: bool = True
) -> VerificationReport:
    """
    Verify the product theorem on a ``thm1`` bundle.

    Parameters:
        bundle (InstanceBundle): Certified thm1 bundle.
        tol (Optional[ToleranceContext]): Zero-test tolerance.
        term_checks (bool): Also check the four case conditions term by term.

    Returns:
        VerificationReport: result id ``thm1``.
    """
    tol = resolve_tolerance(tol)
    hypotheses = check_bundle(bundle, tol)
    g = bundle.matrices
    orders = {k: bundle.order(k) for k in THEOREM1_ORDERS}
    o = theorem1_orders(orders)

    conclusions = [pair_conclusion(
        "((S1B1,T1A1),(S2B2,T2A2))",
        g["S1"] @ g["B1"], g["T1"] @ g["A1"], g["S2"] @ g["B2"], g["T2"] @ g["A2"], g["X"],
        o["M"], o["N"], tol,
    )]
    notes = [f"(m,n,r,s)=({o['m']},{o['n']},{o['r']},{o['s']})"]
    if term_checks:
        conclusions.extend(theorem1_term_checks(
            g["B1"], g["A1"], g["B2"], g["A2"], g["S1"], g["T1"], g["S2"], g["T2"], g["X"], orders, tol
        ))
    return report_for("thm1", bundle, hypotheses, conclusions, notes=notes)


def theorem2_orders(bundle: InstanceBundle) -> Dict[str, int]:
    """Conclusion orders (m+m1+n1-2, n+m2+n2-2)."""
    o = bundle.orders
    return {
        "M": o["m"] + o["m1"] + o["n1"] - 2,
        "N": o["n"] + o["m2"] + o["n2"] - 2,
    }


def expansion_checks(
    B: CMatrix, A: CMatrix, N: CMatrix, X: CMatrix, K: int, tol: Optional[ToleranceContext] = None, label: str = ""
) -> List[Residual]:
    """
    The single-operator perturbation expansions at order K, valid when [A,N] = 0:

        triangle^K_{B,A+N}(X) = sum_j C(K,j) (L_B R_N)^j triangle^(K-j)_{B,A}(X)
        delta^K_{B,A+N}(X)    = sum_j (-1)^j C(K,j) R_N^j delta^(K-j)_{B,A}(X)
    """
    tol = resolve_tolerance(tol)
    direct, direct_scale = triangle_power_scaled(B, A + N, X, K)
    expanded, scale = perturbed_triangle_expansion(B, A, N, X, K)
    checks = [identity_residual(f"expansion{label}:triangle^{K}", direct, expanded, direct_scale + scale, tol)]
    direct, direct_scale = delta_power_scaled(B, A + N, X, K)
    expanded, scale = perturbed_delta_expansion(B, A, N, X, K)
    checks.append(identity_residual(f"expansion{label}:delta^{K}", direct, expanded, direct_scale + scale, tol))
    return checks


def verify_theorem2(bundle: InstanceBundle, tol: Optional[ToleranceContext] = None) -> VerificationReport:
    """
    Verify the perturbation theorem on a ``thm2`` bundle.

    The full variant requires the perturbed composite to vanish in both
    nesting orders. The partial variant (no cross commutation between the
    two pairs) only requires delta outside; the triangle-outside residual is
    recorded as a finding. Both variants also check the perturbation
    expansions of each pair at the conclusion orders.

    Returns:
        VerificationReport: result id ``thm2`` or ``thm2-partial``.
    """
    tol = resolve_tolerance(tol)
    hypotheses = check_bundle(bundle, tol)
    g = bundle.matrices
    o = theorem2_orders(bundle)
    P1, Q1 = g["B1"] + g["N1"], g["A1"] + g["M1"]
    P2, Q2 = g["B2"] + g["N2"], g["A2"] + g["M2"]
    label = "((B1+N1,A1+M1),(B2+N2,A2+M2))"
    args = (P1, Q1, P2, Q2, g["X"], o["M"], o["N"])

    findings: List[Residual] = []
    if bundle.labels.get("variant", "full") == "partial":
        result_id = "thm2-partial"
        conclusions = [ordered_conclusion(label, *args, ComposeOrder.DELTA_FIRST_OUTSIDE, tol)]
        findings.append(ordered_conclusion(label, *args, ComposeOrder.TRIANGLE_FIRST_OUTSIDE, tol))
    else:
        result_id = "thm2"
        conclusions = [pair_conclusion(label, *args, tol)]

    conclusions += expansion_checks(g["B1"], g["A1"], g["M1"], g["X"], o["M"], tol, "(1)")
    conclusions += expansion_checks(g["B2"], g["A2"], g["M2"], g["X"], o["N"], tol, "(2)")
    return report_for(result_id, bundle, hypotheses, conclusions, findings, [f"(M,N)=({o['M']},{o['N']})"])
