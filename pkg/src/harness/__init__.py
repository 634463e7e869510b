"""Verification harness: per-result verifiers and the suite runner."""

from .drazin_theorem import (
    corner_forcing,
    verify_block_equations,
    verify_theorem3,
    verify_theorem3_all,
    verify_theorem3_part,
)
from .identities import (
    verify_commuting_orders,
    verify_cross_representation,
    verify_exact,
    verify_identities,
    verify_perturbed_expansions,
    verify_product_expansions,
    verify_tensor_identity,
)
from .lemmas import verify_lemmas
from .propositions import verify_cor04_jordan, verify_corollaries, verify_prop1
from .sharpness import fixed_sharpness_cells, seeded_sharpness_cells
from .suite import SUITES, SuiteConfig, TheoremHarness, run_suite
from .theorems import verify_theorem1, verify_theorem2

__all__ = [
    "verify_lemmas",
    "verify_prop1",
    "verify_corollaries",
    "verify_cor04_jordan",
    "verify_theorem1",
    "verify_theorem2",
    "verify_theorem3",
    "verify_theorem3_part",
    "verify_theorem3_all",
    "verify_block_equations",
    "corner_forcing",
    "verify_cross_representation",
    "verify_commuting_orders",
    "verify_product_expansions",
    "verify_perturbed_expansions",
    "verify_tensor_identity",
    "verify_exact",
    "verify_identities",
    "fixed_sharpness_cells",
    "seeded_sharpness_cells",
    "SUITES",
    "SuiteConfig",
    "TheoremHarness",
    "run_suite",
]
