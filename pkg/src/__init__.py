"""
isosym package

Finite-dimensional elementary-operator calculus: defect transforms,
operator classification, Drazin inverses and a verification harness.
"""

from .models import CMatrix, ToleranceContext, GenSpec, VerificationReport
from .algorithms import compose_mn, delta_power, triangle_power, classify_operator

__version__ = "0.1.0"

__all__ = [
    'CMatrix',
    'ToleranceContext',
    'GenSpec',
    'VerificationReport',
    'compose_mn',
    'delta_power',
    'triangle_power',
    'classify_operator',
]
