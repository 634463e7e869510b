"""
isosym command-line entry point.

    isosym check MATRIX [MATRIX ...] [--x FILE] [--mmax K] [--nmax K]
    isosym gen --family F --seed S --dim D [--params k=v ...] [--output DIR]
    isosym verify [--suite NAME] [--seeds N] [--dims 2,4,6] [--orders K] [--workers W]
    isosym search --kind minimal-order --class {isometry,symmetry} --bound K MATRIX

Exit codes: 0 success, 1 verified failure or generation failure,
2 usage, configuration or parse error. Logs go to stderr; stdout carries
only the JSON or text payload.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from ..config import configure_logging
from ..harness.suite import SUITES
from ..models.errors import (
    ConfigurationError,
    DimensionMismatchError,
    DimensionTooLargeError,
    GenerationFailedError,
    MatrixFormatError,
    OrderTooLargeError,
)
from ..models.instances import GeneratorFamily
from ..utils.serialization import dumps
from .commands import COMMANDS, EXIT_FAILURE, EXIT_USAGE, CommandResult
from .config import CliConfig, OutputFormat, Subcommand

logger = logging.getLogger(__name__)

USAGE_ERRORS = (
    MatrixFormatError,
    ConfigurationError,
    OrderTooLargeError,
    DimensionTooLargeError,
    DimensionMismatchError,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isosym",
        description="Elementary-operator classification, instance generation and verification.",
    )
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default="json", help="Output format.")
    parser.add_argument("--output", default=None, help="Output file (directory for gen).")
    parser.add_argument("--log-level", default=None, help="Logging level (default from ISOSYM_LOG_LEVEL).")
    parser.add_argument("--atol", type=float, default=None, help="Absolute tolerance override.")
    parser.add_argument("--rtol", type=float, default=None, help="Relative tolerance override.")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="Classify operators read from matrix JSON files.")
    check.add_argument("matrices", nargs="+", help="Matrix JSON files.")
    check.add_argument("--x", default=None, help="Weight matrix X (default identity).")
    check.add_argument("--mmax", type=int, default=4, help="Largest triangle order.")
    check.add_argument("--nmax", type=int, default=4, help="Largest delta order.")

    gen = sub.add_parser("gen", help="Generate a certified instance bundle.")
    gen.add_argument("--family", required=True, choices=[f.value for f in GeneratorFamily])
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--dim", type=int, default=2)
    gen.add_argument("--params", nargs="*", default=[], help="Family parameters as key=value.")

    verify = sub.add_parser("verify", help="Run verification suites.")
    verify.add_argument("--suite", default="all", choices=list(SUITES) + ["all"])
    verify.add_argument("--seeds", type=int, default=20)
    verify.add_argument("--dims", default="2,4,6", help="Comma-separated dimensions.")
    verify.add_argument("--orders", type=int, default=3)
    verify.add_argument("--workers", type=int, default=1)
    verify.add_argument("--timings", action="store_true", help="Include per-cell runtimes.")

    search = sub.add_parser("search", help="Minimal order search against A*.")
    search.add_argument("matrix", help="Matrix JSON file.")
    search.add_argument("--kind", default="minimal-order")
    search.add_argument("--class", dest="search_class", default="isometry", choices=["isometry", "symmetry"])
    search.add_argument("--bound", type=int, default=20)
    return parser


def _emit(result: CommandResult, config: CliConfig) -> None:
    text = dumps(result.payload) if config.format is OutputFormat.JSON else result.text + "\n"
    if config.output and config.subcommand is not Subcommand.GEN:
        target = Path(config.output)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _error(exc: object, code: int) -> int:
    print(f"error: {exc}", file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one CLI invocation.

    Parameters:
        argv (Optional[Sequence[str]]): Arguments without the program name;
            defaults to ``sys.argv[1:]``.

    Returns:
        int: Process exit code.
    """
    args = build_parser().parse_args(argv)
    try:
        configure_logging(args.log_level)
        config = CliConfig.from_namespace(args)
        result = COMMANDS[config.subcommand](config)
    except GenerationFailedError as exc:
        return _error(exc, EXIT_FAILURE)
    except USAGE_ERRORS as exc:
        return _error(exc, EXIT_USAGE)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "config"
        return _error(f"{where}: {first['msg']}", EXIT_USAGE)
    except ValueError as exc:
        return _error(exc, EXIT_USAGE)

    _emit(result, config)
    logger.debug("%s finished with exit code %d", config.subcommand.value, result.exit_code)
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
