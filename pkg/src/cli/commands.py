"""
Subcommand implementations.

Each command takes a validated ``CliConfig`` and returns a
``CommandResult``: the JSON payload, its text projection and the exit
code. Commands never print; ``main`` writes the result once.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List

from ..algorithms.classifiers import OperatorClassifier, OrderKind, minimal_order
from ..algorithms.generators import generate
from ..harness.suite import SuiteConfig, TheoremHarness
from ..models.instances import GenSpec
from ..models.matrix import CMatrix
from ..models.reports import Classification, SuiteReport
from ..utils.serialization import read_matrix, write_json, write_matrix
from .config import CliConfig, SearchClass, Subcommand

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


@dataclass
class CommandResult:
    """Outcome of one subcommand."""

    payload: Any
    text: str
    exit_code: int = EXIT_OK


# check

def _classification_text(source: str, result: Classification) -> str:
    lines = [f"{source} (dim {result.dim})"]
    lines.append(f"  minimal isometry order: {result.minimal_isometry_order or f'none <= {result.m_max}'}")
    lines.append(f"  minimal symmetry order: {result.minimal_symmetry_order or f'none <= {result.n_max}'}")
    frontier = ", ".join(f"({m},{n})" for m, n in result.pareto_frontier) or "none"
    lines.append(f"  isosymmetry frontier: {frontier}")
    return "\n".join(lines)


def cmd_check(config: CliConfig) -> CommandResult:
    """Classify each matrix file; exit 0 whatever the verdicts."""
    X = read_matrix(config.x_path) if config.x_path else None
    classifier = OperatorClassifier(config.tolerance())
    payloads: List[Dict[str, Any]] = []
    texts = []
    for source in config.inputs:
        A = read_matrix(source)
        result = classifier.classify(A, X, config.m_max, config.n_max)
        payloads.append({"source": source, **result.to_json()})
        texts.append(_classification_text(source, result))
    payload = payloads[0] if len(payloads) == 1 else payloads
    return CommandResult(payload, "\n".join(texts))


# gen

def _bundle_dir(config: CliConfig) -> Path:
    if config.output:
        return Path(config.output)
    return Path(f"bundle-{config.family.value}-s{config.seed}-d{config.dim}")


def cmd_gen(config: CliConfig) -> CommandResult:
    """
    Generate a certified bundle and write it as a directory:
    ``manifest.json``, one ``<name>.json`` per matrix and ``drazin.json``
    when a core-nilpotent decomposition is attached.
    """
    spec = GenSpec(seed=config.seed, dim=config.dim, family=config.family, params=config.params)
    bundle = generate(spec, config.tolerance())
    target = _bundle_dir(config)
    for name, matrix in bundle.matrices.items():
        write_matrix(target / f"{name}.json", matrix)
    if bundle.decomposition is not None:
        write_json(target / "drazin.json", bundle.decomposition.to_json())
    manifest = bundle.manifest()
    write_json(target / "manifest.json", manifest)
    logger.info("wrote %s bundle to %s", spec.family.value, target)

    text = "\n".join(
        [f"{spec.family.value} bundle -> {target}"]
        + [f"  {h.label}: {h.value:.3e} <= {h.threshold:.3e}" for h in bundle.hypotheses]
    )
    return CommandResult({"directory": str(target), "manifest": manifest}, text)


# verify

def _suite_text(report: SuiteReport, summary: Dict[str, Any]) -> str:
    lines = [f"{'result':<20} {'pass':>6} {'fail':>6} {'vacuous':>8}"]
    for result_id, counts in summary["by_result"].items():
        lines.append(f"{result_id:<20} {counts['pass']:>6} {counts['fail']:>6} {counts['vacuous']:>8}")
    lines.append(
        f"total {summary['total']}: pass {report.summary['pass']}, "
        f"fail {report.summary['fail']}, vacuous {report.summary['vacuous']}"
    )
    for result_id, seed, dim in summary["failing"]:
        lines.append(f"FAIL {result_id} seed={seed} dim={dim}")
    return "\n".join(lines)


def cmd_verify(config: CliConfig) -> CommandResult:
    """Run the suites; exit 1 iff a non-vacuous failure occurred."""
    suite = SuiteConfig(
        suites=config.suites,
        seeds=config.seeds,
        dims=config.dims,
        orders=config.orders,
        workers=config.workers,
    )
    harness = TheoremHarness(config.tolerance())
    report = harness.run(suite)
    summary = harness.get_suite_summary(report)
    return CommandResult(report.to_json(config.include_timings), _suite_text(report, summary), report.exit_code)


# search

def cmd_search(config: CliConfig) -> CommandResult:
    """Minimal isometry (triangle) or symmetry (delta) order of A against A*."""
    A = read_matrix(config.inputs[0])
    kind = OrderKind.TRIANGLE if config.search_class is SearchClass.ISOMETRY else OrderKind.DELTA
    order = minimal_order(kind, A.H, A, CMatrix.identity(A.dim), config.bound, config.tolerance())
    payload = {
        "source": config.inputs[0],
        "kind": config.kind,
        "class": config.search_class.value,
        "bound": config.bound,
        "order": order,
    }
    text = f"none ≤ {config.bound}" if order is None else str(order)
    if order is None:
        payload["message"] = text
    return CommandResult(payload, text)


COMMANDS: Dict[Subcommand, Callable[[CliConfig], CommandResult]] = {
    Subcommand.CHECK: cmd_check,
    Subcommand.GEN: cmd_gen,
    Subcommand.VERIFY: cmd_verify,
    Subcommand.SEARCH: cmd_search,
}
