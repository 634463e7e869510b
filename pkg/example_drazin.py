"""
Example demonstration of the Drazin inverse.

This script splits a few matrices into invertible core and nilpotent
part and checks the Drazin axioms on the result.
"""

import numpy as np

from src.algorithms.drazin import core_nilpotent, decomposition_checks
from src.algorithms.generators import jordan_block
from src.models import CMatrix
from src.utils import direct_sum


def main():
    """
    Decompose three matrices and print index, block sizes and checks.
    """
    print("Drazin Inverse - Simple Example")
    print("=" * 50)
    print()

    matrices = {
        "nilpotent J(0,3)": jordan_block(0, 3),
        "J(0,2) (+) [1]": direct_sum(jordan_block(0, 2), CMatrix.identity(1)),
        "J(0,3) (+) diag(2,-1)": direct_sum(jordan_block(0, 3), CMatrix(np.diag([2.0, -1.0]))),
    }

    for name, T in matrices.items():
        dec = core_nilpotent(T)
        checks = decomposition_checks(dec)
        print(f"{name}:")
        print(f"  Drazin index: {dec.p}")
        print(f"  core / nilpotent dims: {dec.core_dim} / {dec.nilpotent_dim}")
        print(f"  Td diagonal: {np.round(np.diag(dec.Td.data).real, 6)}")
        for check in checks:
            status = "ok" if check.passed else "FAILED"
            print(f"    {check.label:<16} {check.value:.2e}  {status}")
        print()


if __name__ == "__main__":
    main()
