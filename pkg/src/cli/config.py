"""
Parsed command-line configuration.

``CliConfig`` is the validated form of one invocation. It round-trips
through JSON, so a run can be recorded and replayed with identical flags.
"""

import argparse
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..models.errors import ConfigurationError
from ..models.instances import GeneratorFamily
from ..models.tolerance import ToleranceContext


class Subcommand(str, Enum):
    CHECK = "check"
    GEN = "gen"
    VERIFY = "verify"
    SEARCH = "search"


class OutputFormat(str, Enum):
    JSON = "json"
    TEXT = "text"


class SearchClass(str, Enum):
    ISOMETRY = "isometry"
    SYMMETRY = "symmetry"


def parse_params(items: Optional[List[str]]) -> Dict[str, Any]:
    """
    Parse ``key=value`` generator parameters; all-digit values become ints.

    Raises:
        ConfigurationError: If an item has no ``=`` or an empty key.
    """
    params: Dict[str, Any] = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ConfigurationError(f"generator param must look like key=value, got {item!r}")
        value = value.strip()
        params[key.strip()] = int(value) if value.lstrip("-").isdigit() else value
    return params


def parse_dims(text: str) -> List[int]:
    """Parse a comma-separated dimension list such as ``2,4,6``."""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"dims must be comma-separated integers, got {text!r}") from exc


class CliConfig(BaseModel):
    """
    Validated configuration of one CLI invocation.

    Attributes:
        subcommand (Subcommand): check, gen, verify or search.
        inputs (List[str]): Matrix files (check, search).
        x_path (Optional[str]): Weight matrix file for check.
        m_max, n_max (int): Grid bounds for check.
        family (Optional[GeneratorFamily]): gen family.
        seed (int): gen seed.
        dim (int): gen dimension.
        params (Dict): gen family parameters.
        suites (List[str]): verify suites.
        seeds (int): verify seed count.
        dims (List[int]): verify dimensions.
        orders (int): verify order parameter.
        workers (int): verify thread pool size.
        kind (str): search kind; only ``minimal-order``.
        search_class (SearchClass): isometry (triangle) or symmetry (delta).
        bound (int): search bound.
        atol, rtol (Optional[float]): Tolerance overrides.
        output (Optional[str]): Output file (or directory for gen).
        format (OutputFormat): json or text.
        log_level (Optional[str]): Logging level override.
        include_timings (bool): Keep per-cell runtimes in verify output.
    """

    model_config = ConfigDict(use_enum_values=False)

    subcommand: Subcommand
    inputs: List[str] = Field(default_factory=list)
    x_path: Optional[str] = None
    m_max: int = Field(default=4, ge=1, le=10)
    n_max: int = Field(default=4, ge=1, le=10)
    family: Optional[GeneratorFamily] = None
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    dim: int = Field(default=2, ge=1)
    params: Dict[str, Any] = Field(default_factory=dict)
    suites: List[str] = Field(default_factory=lambda: ["all"])
    seeds: int = Field(default=20, ge=1)
    dims: List[int] = Field(default_factory=lambda: [2, 4, 6])
    orders: int = Field(default=3, ge=1)
    workers: int = Field(default=1, ge=1)
    kind: str = "minimal-order"
    search_class: SearchClass = SearchClass.ISOMETRY
    bound: int = Field(default=20, ge=1, le=20)
    atol: Optional[float] = Field(default=None, ge=0.0)
    rtol: Optional[float] = Field(default=None, ge=0.0)
    output: Optional[str] = None
    format: OutputFormat = OutputFormat.JSON
    log_level: Optional[str] = None
    include_timings: bool = False

    @field_validator("kind")
    @classmethod
    def validate_kind(cls, v: str) -> str:
        if v != "minimal-order":
            raise ValueError(f"search kind must be 'minimal-order', got {v!r}")
        return v

    @model_validator(mode="after")
    def check_required(self) -> "CliConfig":
        """Per-subcommand required inputs."""
        if self.subcommand in (Subcommand.CHECK, Subcommand.SEARCH) and not self.inputs:
            raise ValueError(f"{self.subcommand.value} needs a matrix file")
        if self.subcommand is Subcommand.GEN and self.family is None:
            raise ValueError("gen needs --family")
        return self

    def tolerance(self) -> ToleranceContext:
        """Settings tolerance with the atol/rtol overrides applied."""
        return ToleranceContext.from_settings(self.atol, self.rtol)

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    @classmethod
    def from_json(cls, obj: Dict[str, Any]) -> "CliConfig":
        return cls.model_validate(obj)

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> "CliConfig":
        """Build the config from parsed argparse arguments."""
        values: Dict[str, Any] = {
            "subcommand": args.command,
            "atol": args.atol,
            "rtol": args.rtol,
            "output": args.output,
            "format": args.format,
            "log_level": args.log_level,
        }
        if args.command == "check":
            values.update(inputs=args.matrices, x_path=args.x, m_max=args.mmax, n_max=args.nmax)
        elif args.command == "gen":
            values.update(family=args.family, seed=args.seed, dim=args.dim, params=parse_params(args.params))
        elif args.command == "verify":
            values.update(
                suites=[args.suite],
                seeds=args.seeds,
                dims=parse_dims(args.dims),
                orders=args.orders,
                workers=args.workers,
                include_timings=args.timings,
            )
        elif args.command == "search":
            values.update(inputs=[args.matrix], kind=args.kind, search_class=args.search_class, bound=args.bound)
        return cls(**values)
