"""
Tests for the verification harness: per-result verifiers, sharpness
cells and the suite runner.
"""

import numpy as np
import pytest
from pydantic import ValidationError

from src.algorithms.generators import generate
from src.algorithms.hypotheses import PROP1_COMBOS
from src.harness import (
    SuiteConfig,
    TheoremHarness,
    corner_forcing,
    fixed_sharpness_cells,
    run_suite,
    verify_cor04_jordan,
    verify_cross_representation,
    verify_exact,
    verify_identities,
    verify_lemmas,
    verify_tensor_identity,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
    verify_theorem3_all,
)
from src.harness.identities import identity_orders
from src.harness.suite import corrupt
from src.models import (
    ConfigurationError,
    DimensionTooLargeError,
    GenSpec,
    OrderTooLargeError,
    Verdict,
)


def _bundle(family: str, seed: int = 0, dim: int = 2, **params):
    return generate(GenSpec(seed=seed, dim=dim, family=family, params=params))


class TestVerifiers:
    """
    Test suite for individual result verifiers.
    """

    def test_lemmas(self):
        reports = verify_lemmas(_bundle("lemmas", x="identity"))
        assert [r.result_id for r in reports] == ["lem0i", "lem0ii", "lem1", "lem2", "lem3", "lem4"]
        assert all(r.verdict is Verdict.PASS for r in reports)

    def test_theorem1(self):
        report = verify_theorem1(_bundle("thm1", seed=1))
        assert report.verdict is Verdict.PASS

    def test_corrupted_bundle_is_vacuous(self):
        """Breaking a hypothesis after certification never produces a failure."""
        report = verify_theorem1(corrupt(_bundle("thm1", seed=1)))
        assert report.verdict is Verdict.VACUOUS

    def test_cor04_jordan(self):
        report = verify_cor04_jordan()
        assert report.result_id == "cor04-jordan"
        assert report.verdict is Verdict.PASS

    def test_theorem3_signature_example(self):
        """diag(1,-1) (+) [0] with X = I: part (i) holds and the forcing probe bites."""
        bundle = _bundle("thm3", dim=3, p=1)
        report = verify_theorem3(bundle)
        assert report.verdict is Verdict.PASS
        assert any(c.label.startswith("forcing:") for c in report.conclusions)

    def test_theorem3_all_ids(self):
        reports = verify_theorem3_all(_bundle("thm3", dim=4, p=2))
        assert [r.result_id for r in reports] == [
            "thm3", "thm3-ii", "thm3-iii", "eq1-block", "eq2-block", "eq3-block",
        ]
        assert not any(r.verdict is Verdict.FAIL for r in reports)

    @pytest.mark.parametrize("seed", [0, 3])
    def test_theorem2_partial(self, seed):
        """Without cross commutation only the delta-outside nesting is a conclusion."""
        report = verify_theorem2(_bundle("thm2", seed=seed, dim=4, variant="partial"))
        assert report.result_id == "thm2-partial"
        assert report.verdict is Verdict.PASS
        assert len(report.findings) == 1

    def test_forcing_corner_example(self):
        """A = diag(1,-1,0): the corner X = I + e13 lifts the (1,1) residual to 1."""
        bundle = _bundle("thm3", dim=3, p=1)
        residual = corner_forcing(bundle, corner=1.0)
        assert residual.value == pytest.approx(1.0)
        assert residual.passed
        assert corner_forcing(bundle).value == pytest.approx(np.sqrt(3.0))

    def test_forcing_skipped_without_core(self):
        assert corner_forcing(_bundle("thm3", dim=2, p=2)) is None

    def test_identity_orders(self):
        assert identity_orders(5, 3) == (3, 2)
        assert identity_orders(0, 10) == (1, 1)

    def test_identities(self):
        reports = verify_identities(0, 3)
        assert {r.result_id for r in reports} == {
            "identity-cross", "identity-commuting", "identity-product", "identity-perturbed", "identity-tensor",
        }
        assert all(r.verdict is Verdict.PASS for r in reports)
        assert "identity-tensor" not in {r.result_id for r in verify_identities(0, 5)}

    def test_cross_representation(self):
        assert verify_cross_representation(2, 4).verdict is Verdict.PASS

    def test_tensor_cap(self):
        with pytest.raises(DimensionTooLargeError):
            verify_tensor_identity(0, 5)

    def test_exact(self):
        report = verify_exact(1, 2)
        assert report.verdict is Verdict.PASS
        assert len(report.conclusions) == 4


class TestSharpness:
    """
    Test suite for the sharpness cells.
    """

    def test_fixed_cells_pass(self):
        reports = fixed_sharpness_cells()
        ids = [r.result_id for r in reports]
        assert ids == ["sharp-iso3", "sharp-sym3", "sharp-thm2-k2", "sharp-thm2-k3", "sharp-thm2-k4"]
        assert all(r.verdict is Verdict.PASS for r in reports)

    def test_each_cell_checks_both_sides(self):
        for report in fixed_sharpness_cells():
            expectations = [c.expect.value for c in report.conclusions]
            assert expectations == ["zero", "nonzero"]


class TestSuiteRunner:
    """
    Test suite for SuiteConfig, run_suite and TheoremHarness.
    """

    def test_config_defaults(self):
        config = SuiteConfig()
        assert config.suites == ["all"]
        assert config.seeds == 20
        assert config.dims == [2, 4, 6]
        assert "workers" not in config.report_config()

    def test_dims_sorted_and_deduplicated(self):
        assert SuiteConfig(dims=[4, 2, 4]).dims == [2, 4]

    def test_unknown_suite(self):
        with pytest.raises(ValidationError):
            SuiteConfig(suites=["thm9"])

    def test_expanded_suites_keep_canonical_order(self):
        assert SuiteConfig(suites=["exact", "lemmas"]).expanded_suites() == ["lemmas", "exact"]

    def test_order_guard(self):
        with pytest.raises(OrderTooLargeError):
            run_suite(SuiteConfig(suites=["exact"], seeds=1, dims=[2], orders=63))

    def test_dim_cap(self):
        with pytest.raises(ConfigurationError):
            run_suite(SuiteConfig(suites=["exact"], seeds=1, dims=[17]))

    def test_identity_suites_pass(self):
        report = run_suite(SuiteConfig(suites=["identities", "exact"], seeds=2, dims=[2, 3]))
        assert len(report.cells) == (5 + 1) * 2 * 2
        assert report.summary == {"pass": 24, "fail": 0, "vacuous": 0}
        assert report.exit_code == 0

    def test_prop1_suite(self):
        report = run_suite(SuiteConfig(suites=["prop1"], seeds=2, dims=[2, 4]))
        assert len(report.cells) == len(PROP1_COMBOS) * 2 * 2
        assert {c.result_id for c in report.cells} == {f"prop1-{combo}" for combo in PROP1_COMBOS}
        assert report.summary["fail"] == 0
        assert report.exit_code == 0

    @pytest.mark.parametrize("suite", ["thm1", "thm2"])
    def test_hundred_instance_runs(self, suite):
        """34 seeds over dims 2, 4, 6 give the 100-instance product and perturbation runs."""
        report = run_suite(SuiteConfig(suites=[suite], seeds=34, dims=[2, 4, 6]))
        assert len(report.cells) == 102
        assert report.summary["fail"] == 0

    def test_cells_are_sorted(self):
        report = run_suite(SuiteConfig(suites=["exact"], seeds=3, dims=[2, 3]))
        keys = [(c.result_id, c.seed, c.dim) for c in report.cells]
        assert keys == sorted(keys)

    def test_deterministic_and_worker_invariant(self):
        config = dict(suites=["lemmas", "identities"], seeds=2, dims=[2])
        first = run_suite(SuiteConfig(**config, workers=1)).to_json()
        second = run_suite(SuiteConfig(**config, workers=1)).to_json()
        threaded = run_suite(SuiteConfig(**config, workers=3)).to_json()
        assert first == second == threaded

    def test_timings_are_opt_in(self):
        report = run_suite(SuiteConfig(suites=["exact"], seeds=1, dims=[2]))
        assert "runtime_ms" not in report.to_json()["cells"][0]
        assert report.to_json(include_timings=True)["cells"][0]["runtime_ms"] >= 0.0

    def test_corrupt_seeds_are_vacuous(self):
        report = run_suite(SuiteConfig(suites=["thm1"], seeds=1, dims=[2], corrupt_seeds=[0]))
        assert report.summary["fail"] == 0
        assert all(c.verdict is Verdict.VACUOUS for c in report.cells)
        assert all("corrupted" in c.notes for c in report.cells)

    def test_summary_requires_a_run(self):
        with pytest.raises(ValueError):
            TheoremHarness().get_suite_summary()

    def test_summary(self):
        harness = TheoremHarness()
        harness.run(SuiteConfig(suites=["exact"], seeds=2, dims=[2]))
        summary = harness.get_suite_summary()
        assert summary["total"] == 2
        assert summary["by_result"] == {"exact": {"pass": 2, "fail": 0, "vacuous": 0}}
        assert summary["failing"] == []
        assert 0.0 <= summary["worst_ratio"] <= 1.0
        assert harness.failures() == []


def test_theorem_suites_end_to_end():
    """
    Scenario: run every theorem suite for one seed at dim 2 with the
    verbose table, and require no non-vacuous failure.
    """
    harness = TheoremHarness(verbose=True)
    config = SuiteConfig(
        suites=["lemmas", "prop1", "corollaries", "thm1", "thm2", "thm3", "sharpness"],
        seeds=1,
        dims=[2],
    )
    report = harness.run(config)
    summary = harness.get_suite_summary(report)

    assert summary["fail"] == 0, summary["failing"]
    assert "cor04-jordan" in summary["by_result"]
    assert "sharp-iso3" in summary["by_result"]
    assert report.exit_code == 0
    print(f"✓ {summary['pass']} cells passed, {summary['vacuous']} vacuous")
    print()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
