"""
Operator identities checked on random instances.

    identity-cross       binomial sum = iterated application = superoperator
    identity-commuting   nesting orders agree when the pairs commute
    identity-product     product expansions of delta and triangle for (SB, TA)
    identity-perturbed   perturbation expansions for (B, A + N), [A,N] = 0
    identity-tensor      transforms of B (x) I, A (x) I on X (x) X factor
    exact                exact-arithmetic agreement on Gaussian-integer operands
"""

import logging
from typing import List, Optional

from ..algorithms.elementary_ops import (
    ComposeOrder,
    SuperOpKind,
    as_superop,
    compose_mn_scaled,
    delta_apply,
    delta_power_scaled,
    triangle_apply,
    triangle_power_scaled,
)
from ..algorithms.exact_oracle import MAX_EXACT_ORDER, exact_agreement, integer_operands
from ..algorithms.generators import commuting_matrices, gaussian_matrix, make_rng
from ..algorithms.hypotheses import commutation, tensor_left, tensor_right
from ..models.errors import DimensionTooLargeError
from ..models.matrix import CMatrix
from ..models.reports import Residual, VerificationReport
from ..models.tolerance import ToleranceContext, resolve_tolerance
from ..utils.matrix_ops import fro_norm, kron
from .common import identity_residual
from .propositions import product_expansion_checks
from .theorems import expansion_checks

logger = logging.getLogger(__name__)

MAX_IDENTITY_ORDER = 4
MAX_SUPEROP_CHECK_DIM = 8
MAX_TENSOR_CHECK_DIM = 4

# distinct attempt streams per identity so the cells draw independent operands
_STREAM = {"cross": 101, "commuting": 102, "product": 103, "perturbed": 104, "tensor": 105, "exact": 106}


def identity_orders(seed: int, orders: int) -> tuple:
    """Deterministic (m, n) in 1..min(orders, 4) from the seed."""
    cap = max(1, min(orders, MAX_IDENTITY_ORDER))
    return 1 + seed % cap, 1 + (seed // cap) % cap


def _iterate(step, B: CMatrix, A: CMatrix, X: CMatrix, k: int) -> CMatrix:
    for _ in range(k):
        X = step(B, A, X)
    return X


def verify_cross_representation(
    seed: int, dim: int, orders: int = 3, tol: Optional[ToleranceContext] = None
) -> VerificationReport:
    """
    Binomial sum against iterated single applications and, for dim <= 8,
    against the vec superoperator, for delta^n, triangle^m and compose_mn.
    """
    tol = resolve_tolerance(tol)
    rng = make_rng(seed, _STREAM["cross"])
    B1, A1, B2, A2, X = (gaussian_matrix(rng, dim) for _ in range(5))
    m, n = identity_orders(seed, orders)
    use_superop = dim <= MAX_SUPEROP_CHECK_DIM

    checks: List[Residual] = []
    delta, delta_scale = delta_power_scaled(B2, A2, X, n)
    checks.append(identity_residual(f"delta^{n}:iterated", delta, _iterate(delta_apply, B2, A2, X, n), delta_scale, tol))
    triangle, triangle_scale = triangle_power_scaled(B1, A1, X, m)
    checks.append(identity_residual(
        f"triangle^{m}:iterated", triangle, _iterate(triangle_apply, B1, A1, X, m), triangle_scale, tol
    ))
    composed, composed_scale = compose_mn_scaled(B1, A1, B2, A2, X, m, n)
    nested = _iterate(triangle_apply, B1, A1, _iterate(delta_apply, B2, A2, X, n), m)
    checks.append(identity_residual(f"compose@({m},{n}):iterated", composed, nested, composed_scale, tol))

    notes = []
    if use_superop:
        checks.append(identity_residual(
            f"delta^{n}:superop", delta, as_superop(SuperOpKind.DELTA, (B2, A2), (n,)).apply(X), delta_scale, tol
        ))
        checks.append(identity_residual(
            f"triangle^{m}:superop", triangle,
            as_superop(SuperOpKind.TRIANGLE, (B1, A1), (m,)).apply(X), triangle_scale, tol,
        ))
        superop = as_superop(SuperOpKind.COMPOSE_MN, (B1, A1, B2, A2), (m, n))
        checks.append(identity_residual(f"compose@({m},{n}):superop", composed, superop.apply(X), composed_scale, tol))
    else:
        notes.append(f"superoperator cross-check skipped above dim {MAX_SUPEROP_CHECK_DIM}")
    return VerificationReport.build("identity-cross", seed, dim, conclusions=checks, notes=notes)


def verify_commuting_orders(
    seed: int, dim: int, orders: int = 3, tol: Optional[ToleranceContext] = None
) -> VerificationReport:
    """
    With [A1,A2] = [B1,B2] = 0 the nested orders and the DoubleSum agree.
    The AbstractDoubleSum residual against TriangleFirstOutside is a finding.
    """
    tol = resolve_tolerance(tol)
    rng = make_rng(seed, _STREAM["commuting"])
    A1, A2 = commuting_matrices(rng, dim, 2)
    B1, B2 = commuting_matrices(rng, dim, 2)
    X = gaussian_matrix(rng, dim)
    m, n = identity_orders(seed, orders)

    hypotheses = [commutation("A1,A2", A1, A2, tol), commutation("B1,B2", B1, B2, tol)]
    reference, scale = compose_mn_scaled(B1, A1, B2, A2, X, m, n, ComposeOrder.TRIANGLE_FIRST_OUTSIDE)
    conclusions, findings = [], []
    for order in (ComposeOrder.DELTA_FIRST_OUTSIDE, ComposeOrder.DOUBLE_SUM, ComposeOrder.ABSTRACT_DOUBLE_SUM):
        value, other_scale = compose_mn_scaled(B1, A1, B2, A2, X, m, n, order)
        residual = identity_residual(f"{order.value}@({m},{n})", reference, value, scale + other_scale, tol)
        (findings if order is ComposeOrder.ABSTRACT_DOUBLE_SUM else conclusions).append(residual)
    return VerificationReport.build("identity-commuting", seed, dim, hypotheses, conclusions, findings)


def verify_product_expansions(
    seed: int, dim: int, orders: int = 3, tol: Optional[ToleranceContext] = None
) -> VerificationReport:
    """Product expansions of delta^N and triangle^N for (SB, TA) with [S,B] = [T,A] = 0."""
    tol = resolve_tolerance(tol)
    rng = make_rng(seed, _STREAM["product"])
    S, B = commuting_matrices(rng, dim, 2)
    T, A = commuting_matrices(rng, dim, 2)
    X = gaussian_matrix(rng, dim)
    N = sum(identity_orders(seed, orders))
    hypotheses = [commutation("S,B", S, B, tol), commutation("T,A", T, A, tol)]
    return VerificationReport.build(
        "identity-product", seed, dim, hypotheses, product_expansion_checks(S, B, T, A, X, N, tol)
    )


def verify_perturbed_expansions(
    seed: int, dim: int, orders: int = 3, tol: Optional[ToleranceContext] = None
) -> VerificationReport:
    """Perturbation expansions for (B, A + N) with [A,N] = 0 and arbitrary B."""
    tol = resolve_tolerance(tol)
    rng = make_rng(seed, _STREAM["perturbed"])
    A, N = commuting_matrices(rng, dim, 2, nilpotent=bool(seed % 2))
    B = gaussian_matrix(rng, dim)
    X = gaussian_matrix(rng, dim)
    K = sum(identity_orders(seed, orders))
    hypotheses = [commutation("A,N", A, N, tol)]
    return VerificationReport.build("identity-perturbed", seed, dim, hypotheses, expansion_checks(B, A, N, X, K, tol))


def verify_tensor_identity(
    seed: int, dim: int, orders: int = 3, tol: Optional[ToleranceContext] = None
) -> VerificationReport:
    """
    triangle^m_{B1(x)I,A1(x)I}(delta^n_{B2(x)I,A2(x)I}(X(x)X)) = R (x) X and
    the mirror with I (x) operators equals X (x) R, where R is the composed
    transform on X. Requires dim <= 4.
    """
    tol = resolve_tolerance(tol)
    if dim > MAX_TENSOR_CHECK_DIM:
        raise DimensionTooLargeError(f"tensor identity needs dim <= {MAX_TENSOR_CHECK_DIM}, got {dim}")
    rng = make_rng(seed, _STREAM["tensor"])
    B1, A1, B2, A2, X = (gaussian_matrix(rng, dim) for _ in range(5))
    m, n = identity_orders(seed, orders)
    R, scale = compose_mn_scaled(B1, A1, B2, A2, X, m, n)
    XX = kron(X, X)
    x_norm = fro_norm(X)

    left, left_scale = compose_mn_scaled(
        tensor_left(B1), tensor_left(A1), tensor_left(B2), tensor_left(A2), XX, m, n
    )
    right, right_scale = compose_mn_scaled(
        tensor_right(B1), tensor_right(A1), tensor_right(B2), tensor_right(A2), XX, m, n
    )
    conclusions = [
        identity_residual(f"(x)I@({m},{n})", left, kron(R, X), left_scale + scale * x_norm, tol),
        identity_residual(f"I(x)@({m},{n})", right, kron(X, R), right_scale + scale * x_norm, tol),
    ]
    return VerificationReport.build("identity-tensor", seed, dim, conclusions=conclusions)


def verify_exact(seed: int, dim: int, orders: int = 3, tol: Optional[ToleranceContext] = None) -> VerificationReport:
    """Exact-rational evaluation against the floating path on Gaussian-integer operands."""
    tol = resolve_tolerance(tol)
    rng = make_rng(seed, _STREAM["exact"])
    B1, A1, B2, A2, X = integer_operands(rng, dim)
    m, n = identity_orders(seed, min(orders, MAX_EXACT_ORDER))
    return VerificationReport.build("exact", seed, dim, conclusions=exact_agreement(B1, A1, B2, A2, X, m, n, tol))


def verify_identities(
    seed: int, dim: int, orders: int = 3, tol: Optional[ToleranceContext] = None
) -> List[VerificationReport]:
    """All identity cells for one (seed, dim); the tensor cell only for dim <= 4."""
    tol = resolve_tolerance(tol)
    reports = [
        verify_cross_representation(seed, dim, orders, tol),
        verify_commuting_orders(seed, dim, orders, tol),
        verify_product_expansions(seed, dim, orders, tol),
        verify_perturbed_expansions(seed, dim, orders, tol),
    ]
    if dim <= MAX_TENSOR_CHECK_DIM:
        reports.append(verify_tensor_identity(seed, dim, orders, tol))
    return reports
