"""
Algorithms package for the isosym toolkit.

This package contains the computational core:
- Elementary operators: delta/triangle binomial sums, compositions, superoperators
- Classifiers: membership residuals, minimal orders, Pareto frontiers
- Drazin: index, core-nilpotent decomposition, Drazin inverse
- Generators: seeded, hypothesis-certified instance families
- Exact oracle: sympy evaluation of the binomial sums
"""

from .classifiers import (
    OperatorClassifier,
    OrderKind,
    classify_operator,
    minimal_order,
    minimal_pair_orders,
    pair_residual,
    residual_left_invertible,
    residual_pair_symmetric,
    residual_symmetry,
    strict_at,
)
from .drazin import core_nilpotent, drazin_index, drazin_inverse
from .elementary_ops import (
    ComposeOrder,
    SuperOpKind,
    as_superop,
    compose_mn,
    delta_apply,
    delta_power,
    triangle_apply,
    triangle_power,
)
from .exact_oracle import exact_agreement
from .generators import (
    generate,
    isometry_plus_nilpotent_instance,
    jordan_block,
    mr_symmetric_instance,
    theorem1_instance,
    theorem2_instance,
    theorem3_instance,
)
from .hypotheses import check_bundle

__all__ = [
    'ComposeOrder',
    'SuperOpKind',
    'delta_apply',
    'triangle_apply',
    'delta_power',
    'triangle_power',
    'compose_mn',
    'as_superop',
    'OrderKind',
    'OperatorClassifier',
    'classify_operator',
    'residual_left_invertible',
    'residual_symmetry',
    'residual_pair_symmetric',
    'pair_residual',
    'strict_at',
    'minimal_order',
    'minimal_pair_orders',
    'drazin_index',
    'drazin_inverse',
    'core_nilpotent',
    'generate',
    'jordan_block',
    'mr_symmetric_instance',
    'isometry_plus_nilpotent_instance',
    'theorem1_instance',
    'theorem2_instance',
    'theorem3_instance',
    'check_bundle',
    'exact_agreement',
]
