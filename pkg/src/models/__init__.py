"""
Models package for the isosym data structures.
"""

from .decomposition import DrazinDecomposition
from .errors import (
    ConfigurationError,
    DimensionMismatchError,
    DimensionTooLargeError,
    GenerationFailedError,
    IllConditionedSplittingError,
    IsosymError,
    MatrixFormatError,
    OrderTooLargeError,
)
from .instances import GeneratorFamily, GenSpec, InstanceBundle, PairInstance
from .matrix import CMatrix
from .reports import (
    Classification,
    ClassReport,
    Expectation,
    Residual,
    SuiteReport,
    Verdict,
    VerificationReport,
)
from .superop import SuperOp
from .tolerance import ToleranceContext

__all__ = [
    "CMatrix",
    "ToleranceContext",
    "SuperOp",
    "PairInstance",
    "GenSpec",
    "GeneratorFamily",
    "InstanceBundle",
    "DrazinDecomposition",
    "ClassReport",
    "Classification",
    "Residual",
    "Expectation",
    "Verdict",
    "VerificationReport",
    "SuiteReport",
    "IsosymError",
    "DimensionMismatchError",
    "DimensionTooLargeError",
    "OrderTooLargeError",
    "IllConditionedSplittingError",
    "GenerationFailedError",
    "MatrixFormatError",
    "ConfigurationError",
]
