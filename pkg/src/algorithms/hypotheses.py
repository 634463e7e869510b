"""
Hypothesis checklists.

Each result the harness verifies has a checklist: the commutation,
nilpotency and class-membership residuals its hypotheses require. The
generators run a family's checklist before releasing an instance and the
harness runs it again on whatever bundle it is handed, so a bundle that was
altered after generation shows up as vacuous instead of failing.
"""

from typing import Callable, Dict, List, Optional

from ..models.errors import ConfigurationError
from ..models.instances import InstanceBundle
from ..models.matrix import CMatrix
from ..models.reports import Residual
from ..models.tolerance import ToleranceContext, resolve_tolerance
from ..utils.matrix_ops import commutator, fro_norm, kron, power
from .classifiers import OrderKind, order_residual, pair_residual
from .elementary_ops import ComposeOrder, compose_mn_scaled

PROP1_COMBOS = ("b", "a_and_e", "c_and_e", "c", "a_and_d", "b_and_d")
PROP1_PART_ONE = ("b", "a_and_e", "c_and_e")


# Building blocks

def commutation(label: str, P: CMatrix, Q: CMatrix, tol: ToleranceContext) -> Residual:
    """[P,Q] = 0, scaled by ||PQ|| + ||QP||."""
    value = fro_norm(commutator(P, Q))
    scale = fro_norm(P @ Q) + fro_norm(Q @ P)
    return Residual.zero(f"[{label}]", value, scale, tol)


def single(
    kind: OrderKind, label: str, B: CMatrix, A: CMatrix, X: CMatrix, k: int, tol: ToleranceContext
) -> Residual:
    """triangle^k_{B,A}(X) = 0 or delta^k_{B,A}(X) = 0."""
    report = order_residual(kind, B, A, X, k, tol)
    name = "triangle" if OrderKind(kind) is OrderKind.TRIANGLE else "delta"
    return Residual.zero(f"{name}^{k}_{label}(X)", report.residual, report.scale, tol)


def composite(
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
    """Left-(X,(m,n))-symmetry, worst of both composition orders."""
    report = pair_residual(B1, A1, B2, A2, X, m, n, tol)
    return Residual.zero(f"pair{label}@({m},{n})", report.residual, report.scale, tol)


def delta_outside(
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
    """delta^n_{B2,A2}(triangle^m_{B1,A1}(X)) = 0 in that order only."""
    value, scale = compose_mn_scaled(B1, A1, B2, A2, X, m, n, ComposeOrder.DELTA_FIRST_OUTSIDE)
    return Residual.zero(f"delta-outside{label}@({m},{n})", fro_norm(value), scale, tol)


def nilpotent_of_order(label: str, N: CMatrix, k: int, tol: ToleranceContext) -> List[Residual]:
    """N^k = 0 and, for k > 1, N^(k-1) bounded away from zero."""
    base = max(fro_norm(N), 1.0)
    checks = [Residual.zero(f"{label}^{k}", fro_norm(power(N, k)), base ** k, tol)]
    if k > 1:
        checks.append(
            Residual.nonzero(f"{label}^{k - 1}", fro_norm(power(N, k - 1)), base ** (k - 1), tol)
        )
    return checks


def strict_below(
    kind: OrderKind, label: str, B: CMatrix, A: CMatrix, X: CMatrix, k: int, tol: ToleranceContext
) -> Residual:
    """Residual at order k-1 exceeds the strictness factor times its threshold."""
    from ..config import get_settings

    report = order_residual(kind, B, A, X, k - 1, tol)
    name = "triangle" if OrderKind(kind) is OrderKind.TRIANGLE else "delta"
    return Residual.nonzero(
        f"{name}^{k - 1}_{label}(X)", report.residual, report.scale, tol,
        factor=get_settings().strictness_factor,
    )


def tensor_left(M: CMatrix) -> CMatrix:
    """M (x) I."""
    return kron(M, CMatrix.identity(M.dim))


def tensor_right(M: CMatrix) -> CMatrix:
    """I (x) M."""
    return kron(CMatrix.identity(M.dim), M)


# Family checklists

def _mr_like(b: InstanceBundle, kind: OrderKind, tol: ToleranceContext) -> List[Residual]:
    A, D, N = b["A"], b["D"], b["N"]
    n, expected = b.order("n"), b.order("expected_order")
    identity = CMatrix.identity(A.dim)
    checks = [commutation("D,N", D, N, tol)]
    checks.extend(nilpotent_of_order("N", N, n, tol))
    checks.append(single(kind, "{A*,A}", A.H, A, identity, expected, tol))
    checks.append(strict_below(kind, "{A*,A}", A.H, A, identity, expected, tol))
    return checks


def mr_checklist(b: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    return _mr_like(b, OrderKind.DELTA, tol)


def isonil_checklist(b: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    return _mr_like(b, OrderKind.TRIANGLE, tol)


def unitary_checklist(b: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    U = b["U"]
    identity = CMatrix.identity(U.dim)
    product = U.H @ U
    return [Residual.zero("U*U-I", fro_norm(product - identity), fro_norm(product) + fro_norm(identity), tol)]


def selfadjoint_checklist(b: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    H = b["H"]
    return [Residual.zero("H-H*", fro_norm(H - H.H), 2 * fro_norm(H), tol)]


def commuting_checklist(b: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    names = sorted(b.matrices, key=lambda s: int(s[1:]))
    return [
        commutation(f"{p},{q}", b[p], b[q], tol)
        for i, p in enumerate(names)
        for q in names[i + 1:]
    ]


def lemmas_checklist(b: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    X = b["X"]
    return [
        composite("(B1A1,B2A2)", b["B1"], b["A1"], b["B2"], b["A2"], X, b.order("m"), b.order("n"), tol),
        single(OrderKind.TRIANGLE, "{BL,AL}", b["BL"], b["AL"], X, b.order("m0"), tol),
        single(OrderKind.DELTA, "{BS,AS}", b["BS"], b["AS"], X, b.order("n0"), tol),
        commutation("A1,A2", b["A1"], b["A2"], tol),
        commutation("B1,B2", b["B1"], b["B2"], tol),
    ]


def prop1_checklist(b: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    combo = b.labels["combo"]
    B1, A1, B2, A2, S, T, X = (b[k] for k in ("B1", "A1", "B2", "A2", "S", "T", "X"))
    m, n, t = b.order("m"), b.order("n"), b.order("t")
    available: Dict[str, Callable[[], Residual]] = {
        "a": lambda: composite("(B1A1,B2A2)", B1, A1, B2, A2, X, m, n, tol),
        "b": lambda: single(OrderKind.TRIANGLE, "{B1,A1}", B1, A1, X, m, tol),
        "c": lambda: single(OrderKind.DELTA, "{B2,A2}", B2, A2, X, n, tol),
        "d": lambda: single(OrderKind.TRIANGLE, "{S,T}", S, T, X, t, tol),
        "e": lambda: single(OrderKind.DELTA, "{S,T}", S, T, X, t, tol),
    }
    checks = [available[letter]() for letter in combo.split("_and_")]
    checks.extend([
        commutation("A1,A2", A1, A2, tol),
        commutation("B1,B2", B1, B2, tol),
        commutation("A1,T", A1, T, tol),
        commutation("A2,T", A2, T, tol),
        commutation("B1,S", B1, S, tol),
        commutation("B2,S", B2, S, tol),
    ])
    return checks


def cor01_checklist(b: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    A, B = b["A"], b["B"]
    identity = CMatrix.identity(A.dim)
    return [
        composite("(A*A,A*A)", A.H, A, A.H, A, identity, b.order("m"), b.order("n"), tol),
        single(OrderKind.TRIANGLE, "{B*,B}", B.H, B, identity, b.order("r"), tol),
        single(OrderKind.DELTA, "{B*,B}", B.H, B, identity, b.order("s"), tol),
        commutation("A,B", A, B, tol),
        commutation("A,B*", A, B.H, tol),
    ]


def _theorem1_commutations(
    b: InstanceBundle, names: Dict[str, str], tol: ToleranceContext
) -> List[Residual]:
    g = {key: b[value] for key, value in names.items()}
    return [
        commutation(f"{names['A1']},{names['A2']}", g["A1"], g["A2"], tol),
        commutation(f"{names['B1']},{names['B2']}", g["B1"], g["B2"], tol),
        commutation(f"{names['A1']},{names['T1']}", g["A1"], g["T1"], tol),
        commutation(f"{names['A2']},{names['T2']}", g["A2"], g["T2"], tol),
        commutation(f"{names['B1']},{names['S1']}", g["B1"], g["S1"], tol),
        commutation(f"{names['B2']},{names['S2']}", g["B2"], g["S2"], tol),
    ]


def cor02_checklist(b: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    X = b["X"]
    checks = [
        composite("(B1A1,B2A2)", b["B1"], b["A1"], b["B2"], b["A2"], X, b.order("m"), b.order("n"), tol),
        single(OrderKind.TRIANGLE, "{S1,T1}", b["S1"], b["T1"], X, b.order("r"), tol),
        single(OrderKind.DELTA, "{S2,T2}", b["S2"], b["T2"], X, b.order("s"), tol),
    ]
    names = {k: k for k in ("A1", "A2", "B1", "B2", "S1", "S2", "T1", "T2")}
    return checks + _theorem1_commutations(b, names, tol)


def theorem1_hypotheses(
    B1: CMatrix, A1: CMatrix, B2: CMatrix, A2: CMatrix,
    S1: CMatrix, T1: CMatrix, S2: CMatrix, T2: CMatrix,
    X: CMatrix, orders: Dict[str, int], tol: ToleranceContext, prefix: str = "",
) -> List[Residual]:
    """The four composite hypotheses (ii)-(v) of the product theorem."""
    o = orders
    return [
        composite(f"{prefix}(ii)", B1, A1, B2, A2, X, o["m1"], o["n1"], tol),
        composite(f"{prefix}(iii)", S1, T1, B2, A2, X, o["r1"], o["n2"], tol),
        composite(f"{prefix}(iv)", B1, A1, S2, T2, X, o["m2"], o["s1"], tol),
        composite(f"{prefix}(v)", S1, T1, S2, T2, X, o["r2"], o["s2"], tol),
    ]


THEOREM1_ORDERS = ("m1", "n1", "r1", "n2", "m2", "s1", "r2", "s2")


def thm1_checklist(b: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    orders = {k: b.order(k) for k in THEOREM1_ORDERS}
    checks = theorem1_hypotheses(
        b["B1"], b["A1"], b["B2"], b["A2"], b["S1"], b["T1"], b["S2"], b["T2"], b["X"], orders, tol
    )
    names = {k: k for k in ("A1", "A2", "B1", "B2", "S1", "S2", "T1", "T2")}
    return checks + _theorem1_commutations(b, names, tol)


def cor03_tensor_operands(b: InstanceBundle) -> Dict[str, CMatrix]:
    """Operands of the product theorem on X (x) X built from the single-space pairs."""
    return {
        "B1": tensor_left(b["E1"]), "A1": tensor_left(b["F1"]),
        "B2": tensor_left(b["E2"]), "A2": tensor_left(b["F2"]),
        "S1": tensor_right(b["P1"]), "T1": tensor_right(b["Q1"]),
        "S2": tensor_right(b["P2"]), "T2": tensor_right(b["Q2"]),
        "X": kron(b["X"], b["X"]),
    }


def cor03_checklist(b: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    orders = {k: b.order(k) for k in THEOREM1_ORDERS}
    checks = theorem1_hypotheses(
        b["E1"], b["F1"], b["E2"], b["F2"], b["P1"], b["Q1"], b["P2"], b["Q2"], b["X"], orders, tol
    )
    checks.append(commutation("E1,E2", b["E1"], b["E2"], tol))
    checks.append(commutation("F1,F2", b["F1"], b["F2"], tol))
    t = cor03_tensor_operands(b)
    checks.extend(theorem1_hypotheses(
        t["B1"], t["A1"], t["B2"], t["A2"], t["S1"], t["T1"], t["S2"], t["T2"], t["X"],
        orders, tol, prefix="tensor",
    ))
    return checks


def cor04_checklist(b: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    S, T = b["S"], b["T"]
    n = b.order("n")
    identity = CMatrix.identity(S.dim)
    checks = [
        commutation("S,T", S, T, tol),
        composite("(S*S,S*S)", S.H, S, S.H, S, identity, n, n, tol),
        composite("(T*T,T*T)", T.H, T, T.H, T, identity, n, n, tol),
        composite("(T*T,S*S)", T.H, T, S.H, S, identity, n, n, tol),
        composite("(S*S,T*T)", S.H, S, T.H, T, identity, n, n, tol),
    ]
    orders = {k: n for k in THEOREM1_ORDERS}
    checks.extend(theorem1_hypotheses(
        tensor_left(S.H), tensor_left(S), tensor_left(S.H), tensor_left(S),
        tensor_right(T.H), tensor_right(T), tensor_right(T.H), tensor_right(T),
        kron(identity, identity), orders, tol, prefix="tensor",
    ))
    return checks


def cor05_checklist(b: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    A, N, X = b["A"], b["N"], b["X"]
    checks = [commutation("A,N", A, N, tol)]
    checks.extend(nilpotent_of_order("N", N, b.order("n1"), tol))
    checks.append(composite("(A*A,A*A)", A.H, A, A.H, A, X, b.order("m"), b.order("n"), tol))
    return checks


def thm2_checklist(b: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    checks: List[Residual] = []
    for name, order in (("M1", "m1"), ("N1", "n1"), ("M2", "m2"), ("N2", "n2")):
        checks.extend(nilpotent_of_order(name, b[name], b.order(order), tol))
    checks.extend([
        commutation("A1,M1", b["A1"], b["M1"], tol),
        commutation("A2,M2", b["A2"], b["M2"], tol),
        commutation("B1,N1", b["B1"], b["N1"], tol),
        commutation("B2,N2", b["B2"], b["N2"], tol),
    ])
    args = (b["B1"], b["A1"], b["B2"], b["A2"], b["X"], b.order("m"), b.order("n"), tol)
    if b.labels.get("variant", "full") == "partial":
        checks.append(delta_outside("(B1A1,B2A2)", *args))
        return checks
    checks.extend([
        commutation("A1,A2", b["A1"], b["A2"], tol),
        commutation("B1,B2", b["B1"], b["B2"], tol),
        commutation("M1,M2", b["M1"], b["M2"], tol),
        commutation("N1,N2", b["N1"], b["N2"], tol),
        composite("(B1A1,B2A2)", *args),
    ])
    return checks


def thm3_checklist(b: InstanceBundle, tol: ToleranceContext) -> List[Residual]:
    from .drazin import core_nilpotent, decomposition_checks

    A, X = b["A"], b["X"]
    decomposition = b.decomposition or core_nilpotent(A, tol)
    checks = [composite("(A*A,A*A)", A.H, A, A.H, A, X, b.order("m"), b.order("n"), tol)]
    checks.extend(decomposition_checks(decomposition, tol))
    return checks


CHECKLISTS: Dict[str, Callable[[InstanceBundle, ToleranceContext], List[Residual]]] = {
    "jordan": lambda b, tol: [],
    "unitary": unitary_checklist,
    "selfadjoint": selfadjoint_checklist,
    "commuting": commuting_checklist,
    "mr": mr_checklist,
    "isonil": isonil_checklist,
    "lemmas": lemmas_checklist,
    "prop1": prop1_checklist,
    "cor01": cor01_checklist,
    "cor02": cor02_checklist,
    "cor03": cor03_checklist,
    "cor04": cor04_checklist,
    "cor05": cor05_checklist,
    "thm1": thm1_checklist,
    "thm2": thm2_checklist,
    "thm3": thm3_checklist,
}


def check_bundle(bundle: InstanceBundle, tol: Optional[ToleranceContext] = None) -> List[Residual]:
    """
    Run the checklist of the bundle's family.

    Raises:
        ConfigurationError: If the family has no checklist.
    """
    tol = resolve_tolerance(tol)
    try:
        checklist = CHECKLISTS[bundle.family.value]
    except KeyError as exc:
        raise ConfigurationError(f"no hypothesis checklist for family {bundle.family.value}") from exc
    return checklist(bundle, tol)
