"""
Suite runner for the verification harness.

A suite run expands a ``SuiteConfig`` into cells, one task per (suite,
seed, dim), generates and certifies the instances, runs the verifiers and
collects every report into a ``SuiteReport`` sorted by (result_id, seed,
dim). Cells are independent, so they may run on a thread pool; the output
does not depend on the worker count.
"""

import dataclasses
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field, field_validator

from ..algorithms.elementary_ops import check_order
from ..algorithms.generators import generate, make_rng
from ..algorithms.hypotheses import PROP1_COMBOS
from ..config import get_settings
from ..models.errors import ConfigurationError, GenerationFailedError, IllConditionedSplittingError
from ..models.instances import GeneratorFamily, GenSpec, InstanceBundle
from ..models.matrix import CMatrix
from ..models.reports import Expectation, Residual, SuiteReport, Verdict, VerificationReport
from ..models.tolerance import ToleranceContext, resolve_tolerance
from .common import timed
from .drazin_theorem import verify_theorem3_all
from .identities import verify_exact, verify_identities
from .lemmas import verify_lemmas
from .propositions import verify_cor04_jordan, verify_corollaries, verify_prop1
from .sharpness import fixed_sharpness_cells, seeded_sharpness_cells
from .theorems import verify_theorem1, verify_theorem2

logger = logging.getLogger(__name__)

SUITES = ("lemmas", "prop1", "corollaries", "thm1", "thm2", "thm3", "identities", "sharpness", "exact")

# Largest dimension each suite runs at; larger requested dims are skipped.
DIM_CAPS = {
    "lemmas": 8,
    "prop1": 8,
    "corollaries": 8,
    "thm1": 6,
    "thm2": 8,
    "thm3": 8,
    "identities": 8,
    "exact": 4,
}
TENSOR_DIM_CAP = 4

CORRUPT_TARGETS = ("A1", "A", "F1", "S")
CORRUPT_SCALE = 0.5
_CORRUPT_STREAM = 999

Cell = Callable[[], List[VerificationReport]]


class SuiteConfig(BaseModel):
    """
    What to run.

    Attributes:
        suites (List[str]): Suite names, or ``all``.
        seeds (int): Seeds 0..seeds-1 per dimension.
        dims (List[int]): Dimensions; suites skip dims above their cap.
        orders (int): Order parameter handed to the generators.
        workers (int): Thread pool size; does not affect the report.
        corrupt_seeds (List[int]): Seeds whose instances are perturbed after
            certification, which must turn their cells vacuous.
    """

    suites: List[str] = Field(default_factory=lambda: ["all"])
    seeds: int = Field(default=20, ge=1)
    dims: List[int] = Field(default_factory=lambda: [2, 4, 6])
    orders: int = Field(default=3, ge=1)
    workers: int = Field(default=1, ge=1)
    corrupt_seeds: List[int] = Field(default_factory=list)

    @field_validator("suites")
    @classmethod
    def validate_suites(cls, v: List[str]) -> List[str]:
        unknown = [s for s in v if s != "all" and s not in SUITES]
        if unknown:
            raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
        return v

    @field_validator("dims")
    @classmethod
    def validate_dims(cls, v: List[int]) -> List[int]:
        if not v or any(d < 1 for d in v):
            raise ValueError("dims must be a non-empty list of positive integers")
        return sorted(set(v))

    def expanded_suites(self) -> List[str]:
        if "all" in self.suites:
            return list(SUITES)
        return [s for s in SUITES if s in self.suites]

    def report_config(self) -> Dict[str, Any]:
        """Config echoed in the suite report; the worker count is left out."""
        return self.model_dump(mode="json", exclude={"workers"})


# Instance preparation

def _x_mode(seed: int) -> str:
    return "random" if seed % 2 else "identity"


def corrupt(bundle: InstanceBundle) -> InstanceBundle:
    """Copy of ``bundle`` with the first of A1, A, F1, S perturbed by a Gaussian."""
    target = next((name for name in CORRUPT_TARGETS if name in bundle), None)
    if target is None:
        raise ConfigurationError(f"{bundle.family.value} has no operand to corrupt")
    rng = make_rng(bundle.spec.seed, _CORRUPT_STREAM)
    d = bundle[target].dim
    noise = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    matrices = dict(bundle.matrices)
    matrices[target] = bundle[target] + CMatrix(CORRUPT_SCALE * noise)
    logger.debug("corrupted %s of %s seed=%d", target, bundle.family.value, bundle.spec.seed)
    return dataclasses.replace(bundle, matrices=matrices)


def _vacuous(result_ids: Sequence[str], seed: int, dim: int, label: str, note: str) -> List[VerificationReport]:
    tol = resolve_tolerance(None)
    failed = Residual.zero(label, 1.0, 0.0, tol)
    return [VerificationReport.build(rid, seed, dim, hypotheses=[failed], notes=[note]) for rid in result_ids]


class _CellFactory:
    """Builds the cell tasks of one suite run."""

    def __init__(self, config: SuiteConfig, tol: ToleranceContext):
        self.config = config
        self.tol = tol

    def bundle(self, family: GeneratorFamily, seed: int, dim: int, params: Dict[str, Any]) -> InstanceBundle:
        bundle = generate(GenSpec(seed=seed, dim=dim, family=family, params=params), self.tol)
        if seed in self.config.corrupt_seeds:
            bundle = corrupt(bundle)
        return bundle

    def guarded(self, result_ids: Sequence[str], seed: int, dim: int, run: Cell) -> Cell:
        """Wrap a cell so generation and splitting failures become vacuous reports."""
        corrupted = seed in self.config.corrupt_seeds

        def cell() -> List[VerificationReport]:
            try:
                reports = run()
            except GenerationFailedError as exc:
                logger.warning("%s seed=%d dim=%d: %s", result_ids[0], seed, dim, exc)
                return _vacuous(result_ids, seed, dim, "generation-certified", str(exc))
            except IllConditionedSplittingError as exc:
                logger.warning("%s seed=%d dim=%d: %s", result_ids[0], seed, dim, exc)
                return _vacuous(result_ids, seed, dim, "splitting-conditioned", str(exc))
            if corrupted:
                for report in reports:
                    report.notes.append("corrupted")
            return reports

        return cell

    def block_params(self, seed: int, **extra: Any) -> Dict[str, Any]:
        return {"order": self.config.orders, "x": _x_mode(seed), **extra}

    # Per-suite cells

    def lemmas(self, seed: int, dim: int) -> List[Cell]:
        ids = ("lem0i", "lem0ii", "lem1", "lem2", "lem3", "lem4")
        run = lambda: verify_lemmas(self.bundle(GeneratorFamily.LEMMAS, seed, dim, self.block_params(seed)), self.tol)
        return [self.guarded(ids, seed, dim, run)]

    def prop1(self, seed: int, dim: int) -> List[Cell]:
        cells = []
        for combo in PROP1_COMBOS:
            params = self.block_params(seed, combo=combo)
            run = lambda params=params: [verify_prop1(self.bundle(GeneratorFamily.PROP1, seed, dim, params), tol=self.tol)]
            cells.append(self.guarded((f"prop1-{combo}",), seed, dim, run))
        return cells

    def corollaries(self, seed: int, dim: int) -> List[Cell]:
        families = [GeneratorFamily.COR01, GeneratorFamily.COR02, GeneratorFamily.COR05]
        if dim <= TENSOR_DIM_CAP:
            families += [GeneratorFamily.COR03, GeneratorFamily.COR04]
        cells = []
        for family in families:
            params = self.block_params(seed)
            run = lambda family=family, params=params: verify_corollaries(
                [self.bundle(family, seed, dim, params)], self.tol
            )
            cells.append(self.guarded((family.value,), seed, dim, run))
        return cells

    def thm1(self, seed: int, dim: int) -> List[Cell]:
        run = lambda: [verify_theorem1(self.bundle(GeneratorFamily.THM1, seed, dim, self.block_params(seed)), self.tol)]
        return [self.guarded(("thm1",), seed, dim, run)]

    def thm2(self, seed: int, dim: int) -> List[Cell]:
        variant = "partial" if seed % 4 == 3 and dim >= 2 else "full"
        rid = "thm2-partial" if variant == "partial" else "thm2"
        params = self.block_params(seed, variant=variant)
        run = lambda: [verify_theorem2(self.bundle(GeneratorFamily.THM2, seed, dim, params), self.tol)]
        return [self.guarded((rid,), seed, dim, run)]

    def thm3(self, seed: int, dim: int) -> List[Cell]:
        p = 1 + seed % max(1, min(3, dim - 1))
        params: Dict[str, Any] = {
            "p": p,
            "m": 1 + seed % 2,
            "n": 1 + (seed // 2) % 3,
            "mode": "strict" if seed % 4 == 3 and dim - p >= 2 else "default",
            "rotate": 1,
        }
        if seed % 2:
            params["x"] = "random"
        ids = ("thm3", "thm3-ii", "thm3-iii", "eq1-block", "eq2-block", "eq3-block")
        run = lambda: verify_theorem3_all(self.bundle(GeneratorFamily.THM3, seed, dim, params), self.tol)
        return [self.guarded(ids, seed, dim, run)]

    def identities(self, seed: int, dim: int) -> List[Cell]:
        return [lambda: verify_identities(seed, dim, self.config.orders, self.tol)]

    def exact(self, seed: int, dim: int) -> List[Cell]:
        return [lambda: [verify_exact(seed, dim, self.config.orders, self.tol)]]

    def sharpness(self, seed: int) -> List[Cell]:
        return [lambda: seeded_sharpness_cells(seed, self.tol)]

    def cells(self) -> List[Cell]:
        cells: List[Cell] = []
        config = self.config
        for suite in config.expanded_suites():
            if suite == "sharpness":
                cells.append(lambda: fixed_sharpness_cells(self.tol))
                cells.extend(c for seed in range(config.seeds) for c in self.sharpness(seed))
                continue
            if suite == "corollaries":
                cells.append(lambda: [verify_cor04_jordan(tol=self.tol)])
            cap = DIM_CAPS[suite]
            for dim in config.dims:
                if dim > cap:
                    logger.info("skipping %s at dim %d (cap %d)", suite, dim, cap)
                    continue
                for seed in range(config.seeds):
                    cells.extend(getattr(self, suite)(seed, dim))
        return cells


def run_suite(config: SuiteConfig, tol: Optional[ToleranceContext] = None) -> SuiteReport:
    """
    Run every cell of ``config`` and aggregate the reports.

    Parameters:
        config (SuiteConfig): Suites, seeds, dims, orders and workers.
        tol (Optional[ToleranceContext]): Zero-test tolerance.

    Returns:
        SuiteReport: Cells sorted by (result_id, seed, dim) with a verdict summary.

    Raises:
        OrderTooLargeError: If ``orders`` exceeds the exact binomial guard.
        ConfigurationError: If a dimension exceeds the ``max_dim`` setting.
    """
    check_order(config.orders, "orders")
    cap = get_settings().max_dim
    too_large = [d for d in config.dims if d > cap]
    if too_large:
        raise ConfigurationError(f"dims {too_large} exceed the configured cap {cap}")

    tol = resolve_tolerance(tol)
    cells = _CellFactory(config, tol).cells()
    logger.info("running %d cell tasks on %d worker(s)", len(cells), config.workers)
    if config.workers == 1:
        results = [timed(cell) for cell in cells]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(timed, cells))
    return SuiteReport.from_cells(config.report_config(), [r for batch in results for r in batch])


class TheoremHarness:
    """
    Runs verification suites and summarizes the outcome.

    The harness is a thin stateful wrapper over ``run_suite``: it keeps the
    last report so callers can ask for a summary or the failing cells.
    """

    def __init__(self, tol: Optional[ToleranceContext] = None, verbose: bool = False):
        """
        Parameters:
            tol (Optional[ToleranceContext]): Zero-test tolerance.
            verbose (bool): If True, prints a per-result table after each run.
        """
        self.tol = resolve_tolerance(tol)
        self.verbose = verbose
        self.last_report: Optional[SuiteReport] = None

    def run(self, config: Optional[SuiteConfig] = None) -> SuiteReport:
        """Run ``config`` (default: every suite with default sizes)."""
        config = config or SuiteConfig()
        report = run_suite(config, self.tol)
        self.last_report = report

        if self.verbose:
            print("=" * 80)
            print(f"Verification Harness - {', '.join(config.expanded_suites())}")
            print("=" * 80)
            print(f"{'Result':<20} {'Pass':<8} {'Fail':<8} {'Vacuous':<8}")
            print("-" * 80)
            for result_id, counts in self.get_suite_summary(report)["by_result"].items():
                print(f"{result_id:<20} {counts['pass']:<8} {counts['fail']:<8} {counts['vacuous']:<8}")
            print("=" * 80)
            print(f"Total: {report.summary}")
            print("=" * 80)
        return report

    def failures(self, report: Optional[SuiteReport] = None) -> List[VerificationReport]:
        """Cells with a non-vacuous failure."""
        report = report or self.last_report
        if report is None:
            return []
        return [c for c in report.cells if c.verdict is Verdict.FAIL]

    def get_suite_summary(self, report: Optional[SuiteReport] = None) -> Dict[str, Any]:
        """
        Summary of a suite report.

        Returns:
            Dict: ``total``, the verdict counts, counts per result id
            (``by_result``), the failing (result_id, seed, dim) cells and
            the largest conclusion residual ratio value/threshold.
        """
        report = report or self.last_report
        if report is None:
            raise ValueError("No suite has been run yet")

        by_result: Dict[str, Dict[str, int]] = {}
        for cell in report.cells:
            counts = by_result.setdefault(cell.result_id, {v.value: 0 for v in Verdict})
            counts[cell.verdict.value] += 1

        ratios = [
            c.value / c.threshold
            for cell in report.cells
            for c in cell.conclusions
            if c.expect is Expectation.ZERO and c.threshold > 0
        ]
        return {
            "total": len(report.cells),
            **report.summary,
            "by_result": by_result,
            "failing": [(c.result_id, c.seed, c.dim) for c in self.failures(report)],
            "worst_ratio": max(ratios, default=0.0),
        }
