"""
Utility functions for the isosym toolkit.

This package provides matrix-core operations and JSON serialization.
"""

from .matrix_ops import (
    add,
    adjoint,
    commutator,
    direct_sum,
    fro_norm,
    identity,
    inverse,
    kron,
    matmul,
    power,
    rank,
    scalar_multiply,
    spectral_norm,
    sub,
)
from .serialization import dumps, loads, read_json, read_matrix, write_json, write_matrix

__all__ = [
    'add',
    'adjoint',
    'commutator',
    'direct_sum',
    'fro_norm',
    'identity',
    'inverse',
    'kron',
    'matmul',
    'power',
    'rank',
    'scalar_multiply',
    'spectral_norm',
    'sub',
    'dumps',
    'loads',
    'read_json',
    'read_matrix',
    'write_json',
    'write_matrix',
]
