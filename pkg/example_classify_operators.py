"""
Example demonstration of the operator classifier.

This script classifies a few small operators as m-isometries,
n-symmetries and (m,n)-isosymmetries, then searches the minimal orders
of seeded Jordan-type instances.
"""

import numpy as np

from src.algorithms import OperatorClassifier, OrderKind, minimal_order
from src.algorithms.generators import isometry_plus_nilpotent_instance, jordan_block, mr_symmetric_instance
from src.models import CMatrix, GenSpec


def main():
    """
    Classify a handful of operators and print their minimal orders.
    """
    print("Operator Classifier - Simple Example")
    print("=" * 50)
    print()

    operators = {
        "Jordan block J(1,2)": jordan_block(1, 2),
        "Jordan block J(1,3)": jordan_block(1, 3),
        "unitary diag(1, i)": CMatrix(np.diag([1.0, 1j])),
        "scaled identity 2I": CMatrix.from_rows([[2, 0], [0, 2]]),
    }

    classifier = OperatorClassifier()
    for name, A in operators.items():
        result = classifier.classify(A, m_max=6, n_max=6)
        summary = classifier.get_classification_summary(result)
        print(f"{name}:")
        print(f"  isometry order: {summary['isometry_order']}")
        print(f"  symmetry order: {summary['symmetry_order']}")
        print(f"  isosymmetry frontier: {summary['isosymmetry_frontier']}")
        print(f"  passing cells: {summary['passing_cells']}/{summary['total_cells']}")
    print()

    # Seeded instances with a known order 2n - 1
    print("Seeded instances:")
    for n in (2, 3):
        spec = GenSpec(seed=4, dim=6, family="mr", params={"n": n})
        A, expected = mr_symmetric_instance(spec)
        found = minimal_order(OrderKind.DELTA, A.H, A, CMatrix.identity(A.dim))
        print(f"  real + {n}-nilpotent: symmetry order {found} (expected {expected})")

        spec = GenSpec(seed=4, dim=6, family="isonil", params={"n": n})
        A, expected = isometry_plus_nilpotent_instance(spec)
        found = minimal_order(OrderKind.TRIANGLE, A.H, A, CMatrix.identity(A.dim))
        print(f"  unitary + {n}-nilpotent: isometry order {found} (expected {expected})")


if __name__ == "__main__":
    main()
