"""
Unit tests for the seeded generators and their hypothesis certification.
"""

import numpy as np
import pytest
from pydantic import ValidationError

from src.algorithms import generators
from src.algorithms.classifiers import OrderKind, order_residual
from src.algorithms.generators import (
    InstanceRejected,
    commuting_family,
    commuting_matrices,
    generate,
    isometry_plus_nilpotent_instance,
    jordan_block,
    make_rng,
    mr_symmetric_instance,
    theorem3_instance,
)
from src.algorithms.hypotheses import PROP1_COMBOS, check_bundle
from src.models import CMatrix, ConfigurationError, GenerationFailedError, GeneratorFamily, GenSpec
from src.utils import commutator, fro_norm


def _spec(family: str, seed: int = 0, dim: int = 4, **params) -> GenSpec:
    return GenSpec(seed=seed, dim=dim, family=family, params=params)


class TestGenSpec:
    """
    Test suite for generator requests.
    """

    def test_dim_cap(self):
        """The default max_dim setting is 16."""
        with pytest.raises(ValidationError):
            GenSpec(seed=0, dim=17, family="jordan")

    def test_negative_seed(self):
        with pytest.raises(ValidationError):
            GenSpec(seed=-1, dim=2, family="jordan")

    def test_unknown_family(self):
        with pytest.raises(ValidationError):
            GenSpec(seed=0, dim=2, family="circulant")

    def test_int_param(self):
        spec = _spec("mr", n="3")
        assert spec.int_param("n", 2) == 3
        assert spec.int_param("missing", 7) == 7
        with pytest.raises(ValueError):
            _spec("mr", n="many").int_param("n", 2)


class TestElementaryFamilies:
    """
    Test suite for the elementary constructors.
    """

    def test_rng_is_deterministic(self):
        assert make_rng(5, 1).integers(0, 1 << 30) == make_rng(5, 1).integers(0, 1 << 30)
        assert make_rng(5, 1).integers(0, 1 << 30) != make_rng(5, 2).integers(0, 1 << 30)

    def test_jordan_block(self):
        np.testing.assert_array_equal(jordan_block(2, 2).data, [[2, 1], [0, 2]])
        with pytest.raises(ValueError):
            jordan_block(1, 0)

    def test_jordan_family(self):
        bundle = generate(_spec("jordan", dim=3))
        assert bundle["A"] == jordan_block(1, 3)

    def test_unitary_family(self):
        U = generate(_spec("unitary", seed=3))["U"]
        assert (U.H @ U).allclose(CMatrix.identity(4), atol=1e-12)

    def test_selfadjoint_family(self):
        H = generate(_spec("selfadjoint", seed=3))["H"]
        assert H == H.H

    def test_commuting_matrices_commute(self):
        family = commuting_matrices(make_rng(9), 5, 4)
        for P in family:
            for Q in family:
                assert fro_norm(commutator(P, Q)) < 1e-12

    def test_commuting_nilpotent(self):
        family = commuting_family(_spec("commuting", count=2, nilpotent=1))
        for P in family:
            assert fro_norm(P @ P @ P @ P) == 0.0

    def test_commuting_count_limit(self):
        with pytest.raises(ConfigurationError):
            commuting_family(_spec("commuting", count=7))


class TestCertifiedFamilies:
    """
    Test suite for the hypothesis-certified theorem families.
    """

    def test_determinism(self):
        first = generate(_spec("lemmas", seed=5))
        second = generate(_spec("lemmas", seed=5))
        assert first.orders == second.orders
        assert first.attempt == second.attempt
        for name in first.matrices:
            assert first[name] == second[name]

    def test_seeds_differ(self):
        assert generate(_spec("lemmas", seed=1))["A1"] != generate(_spec("lemmas", seed=2))["A1"]

    def test_mr_expected_order(self):
        bundle = generate(_spec("mr", dim=2, n=2))
        assert bundle.order("expected_order") == 3

    def test_mr_helper(self):
        A, order = mr_symmetric_instance(_spec("jordan", seed=4, dim=6, n=3))
        assert order == 5
        assert A.dim == 6

    def test_isonil_helper(self):
        A, order = isometry_plus_nilpotent_instance(_spec("jordan", seed=4, dim=4, n=2))
        assert order == 3

    def test_mr_bad_index(self):
        with pytest.raises(ConfigurationError):
            generate(_spec("mr", dim=2, n=3))

    @pytest.mark.parametrize("combo", PROP1_COMBOS)
    def test_prop1_combos_certify(self, combo):
        bundle = generate(_spec("prop1", seed=2, combo=combo))
        assert bundle.certified()
        assert bundle.labels["combo"] == combo

    def test_prop1_unknown_combo(self):
        with pytest.raises(ConfigurationError):
            generate(_spec("prop1", combo="zz"))

    @pytest.mark.parametrize("family", ["lemmas", "cor01", "cor02", "cor05", "thm1", "thm2"])
    def test_rechecked_hypotheses_pass(self, family):
        """A released bundle passes its checklist when checked again."""
        bundle = generate(_spec(family, seed=1))
        assert all(h.passed for h in check_bundle(bundle))

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_thm2_partial_needs_both_pairs(self, seed):
        """Neither factor vanishes on X alone; only the delta-outside composite does."""
        bundle = generate(_spec("thm2", seed=seed, variant="partial"))
        assert bundle.labels["variant"] == "partial"
        assert bundle.certified()
        B1, A1, B2, A2, X = (bundle[k] for k in ("B1", "A1", "B2", "A2", "X"))
        m, n = bundle.order("m"), bundle.order("n")
        assert not order_residual(OrderKind.TRIANGLE, B1, A1, X, m).verdict
        assert not order_residual(OrderKind.DELTA, B2, A2, X, n).verdict
        assert any(h.label.startswith("delta-outside") and h.passed for h in bundle.hypotheses)
        assert fro_norm(commutator(A1, A2)) > 1e-6

    def test_thm2_partial_dim_one(self):
        with pytest.raises(ConfigurationError):
            generate(_spec("thm2", dim=1, variant="partial"))

    def test_tensor_family_dim_cap(self):
        with pytest.raises(ConfigurationError):
            generate(_spec("cor03", dim=5))

    def test_thm3_decomposition(self):
        bundle = theorem3_instance(_spec("jordan", dim=4, p=2))
        assert bundle.family is GeneratorFamily.THM3
        assert bundle.decomposition is not None
        assert bundle.decomposition.p == 2
        assert bundle.decomposition.core_dim == 2

    def test_thm3_bad_p(self):
        with pytest.raises(ConfigurationError):
            generate(_spec("thm3", dim=3, p=4))

    def test_manifest(self):
        bundle = generate(_spec("thm3", dim=3, p=1))
        manifest = bundle.manifest()
        assert manifest["spec"]["family"] == "thm3"
        assert manifest["drazin"] == "drazin.json"
        assert manifest["matrices"] == {"A": "A.json", "X": "X.json"}
        assert all(h["passed"] for h in manifest["hypotheses"])

    def test_generation_failure(self, monkeypatch):
        def reject(spec, rng, tol):
            raise InstanceRejected("never")

        monkeypatch.setitem(generators.BUILDERS, GeneratorFamily.JORDAN, reject)
        with pytest.raises(GenerationFailedError):
            generate(_spec("jordan", dim=2))


def test_generator_catalogue():
    """
    Scenario: generate one bundle per certified family and print its orders.
    """
    families = ["lemmas", "prop1", "cor01", "cor02", "cor03", "cor04", "cor05", "thm1", "thm2", "thm3"]
    print("=" * 80)
    print(f"{'family':<10} {'attempt':>8}  orders")
    print("=" * 80)
    for family in families:
        bundle = generate(_spec(family, seed=0, dim=2))
        print(f"{family:<10} {bundle.attempt:>8}  {bundle.orders}")
        assert bundle.certified()
    print("✓ Every family certified at dim 2")
    print()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
