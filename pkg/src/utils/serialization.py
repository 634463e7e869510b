"""
JSON input/output helpers.

Output is deterministic: keys sorted, two-space indent, trailing newline.
Floats are written in Python's shortest round-trip representation, which
reproduces every binary64 value exactly on reading. Non-finite numbers are
rejected in both directions.
"""

import json
import math
from pathlib import Path
from typing import Any, Union

from ..models.errors import MatrixFormatError
from ..models.matrix import CMatrix

PathLike = Union[str, Path]


def _reject_constant(name: str) -> Any:
    raise MatrixFormatError(f"non-finite number {name} is not allowed", "$")


def _parse_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise MatrixFormatError(f"number {text} overflows binary64", "$")
    return value


def dumps(obj: Any) -> str:
    """Serialize to deterministic JSON text."""
    try:
        return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"
    except ValueError as exc:
        raise MatrixFormatError(f"cannot serialize: {exc}", "$") from exc


def loads(text: str) -> Any:
    """
    Parse JSON text, rejecting NaN/Infinity and overflowing literals.

    Raises:
        MatrixFormatError: On syntax errors or non-finite numbers.
    """
    try:
        return json.loads(
            text, parse_constant=_reject_constant, parse_float=_parse_float
        )
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", "$"
        ) from exc


def read_json(path: PathLike) -> Any:
    """Read and parse a JSON file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc.strerror}", str(path)) from exc
    return loads(text)


def write_json(path: PathLike, obj: Any) -> None:
    """Write deterministic JSON, creating parent directories."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(dumps(obj), encoding="utf-8")


def read_matrix(path: PathLike) -> CMatrix:
    """
    Read a matrix file in the ``{"dim", "data"}`` format.

    Raises:
        MatrixFormatError: Naming the file and the offending field.
    """
    try:
        return CMatrix.from_json(read_json(path))
    except MatrixFormatError as exc:
        error = MatrixFormatError(f"{path}: {exc.args[0]}")
        error.field = exc.field
        raise error from exc


def write_matrix(path: PathLike, matrix: CMatrix) -> None:
    write_json(path, matrix.to_json())
