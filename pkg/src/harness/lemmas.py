"""
Lemma verification: ascent, inverse stability, powers and one-factor
sufficiency of the defect transforms.

All lemma cells run on one ``lemmas`` bundle, which carries a commuting
composite pair (B1,A1),(B2,A2) certified at (m,n), an iso pair (BL,AL)
certified at m0 and a sym pair (BS,AS) certified at n0.
"""

import logging
from typing import List, Optional

from ..algorithms.classifiers import ASCENT_LOOKAHEAD, OrderKind
from ..algorithms.hypotheses import check_bundle, single
from ..models.instances import InstanceBundle
from ..models.reports import VerificationReport
from ..models.tolerance import ToleranceContext, resolve_tolerance
from ..utils.matrix_ops import inverse, power
from .common import pair_conclusion, report_for

logger = logging.getLogger(__name__)

MAX_POWER = 4


def verify_lemmas(bundle: InstanceBundle, tol: Optional[ToleranceContext] = None) -> List[VerificationReport]:
    """
    One report per lemma for a ``lemmas`` bundle.

    Reports:
        lem0i: single-pair ascent, orders m0..m0+3 and n0..n0+3.
        lem0ii: single-pair inverse stability.
        lem1: composite inverse stability at (m, n).
        lem2: composite powers B^k, A^k at (m, n), k <= 4.
        lem3: one vanishing factor makes the composite vanish in both orders.
        lem4: composite ascent, m1 in m..m+3 and n1 in n..n+3.

    A failed hypothesis makes every report vacuous.
    """
    tol = resolve_tolerance(tol)
    hypotheses = check_bundle(bundle, tol)
    B1, A1, B2, A2, X = (bundle[k] for k in ("B1", "A1", "B2", "A2", "X"))
    BL, AL, BS, AS = (bundle[k] for k in ("BL", "AL", "BS", "AS"))
    m, n = bundle.order("m"), bundle.order("n")
    m0, n0 = bundle.order("m0"), bundle.order("n0")
    steps = range(ASCENT_LOOKAHEAD + 1)

    lem0i = [single(OrderKind.TRIANGLE, "{BL,AL}", BL, AL, X, m0 + t, tol) for t in steps]
    lem0i += [single(OrderKind.DELTA, "{BS,AS}", BS, AS, X, n0 + t, tol) for t in steps]

    lem0ii = [
        single(OrderKind.TRIANGLE, "{BL^-1,AL^-1}", inverse(BL), inverse(AL), X, m0, tol),
        single(OrderKind.DELTA, "{BS^-1,AS^-1}", inverse(BS), inverse(AS), X, n0, tol),
    ]

    lem1 = [pair_conclusion("inverse", inverse(B1), inverse(A1), inverse(B2), inverse(A2), X, m, n, tol)]

    lem2 = [
        pair_conclusion(f"power{k}", power(B1, k), power(A1, k), power(B2, k), power(A2, k), X, m, n, tol)
        for k in range(1, MAX_POWER + 1)
    ]

    lem3 = []
    for extra in (1, 2):
        lem3.append(pair_conclusion("(BL,AL)x(B2,A2)", BL, AL, B2, A2, X, m0, extra, tol))
        lem3.append(pair_conclusion("(B1,A1)x(BS,AS)", B1, A1, BS, AS, X, extra, n0, tol))

    lem4 = [
        pair_conclusion("ascent", B1, A1, B2, A2, X, m + i, n + j, tol)
        for i in steps
        for j in steps
    ]

    reports = [
        report_for(result_id, bundle, hypotheses, conclusions)
        for result_id, conclusions in (
            ("lem0i", lem0i),
            ("lem0ii", lem0ii),
            ("lem1", lem1),
            ("lem2", lem2),
            ("lem3", lem3),
            ("lem4", lem4),
        )
    ]
    logger.debug("lemmas seed=%d dim=%d: %s", bundle.spec.seed, bundle.dim, [r.verdict.value for r in reports])
    return reports
