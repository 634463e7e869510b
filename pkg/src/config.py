"""
Runtime settings for the isosym toolkit.

Defaults live on the pydantic ``Settings`` model; a handful of environment
variables override them:

    ISOSYM_MAX_DIM     largest accepted input dimension (default 16)
    ISOSYM_LOG_LEVEL   logging level name for the CLI (default WARNING)
"""

import logging
import os
from typing import Optional

from pydantic import BaseModel, Field, ValidationError, field_validator

from .models.errors import ConfigurationError


class Settings(BaseModel):
    """
    Global limits and tolerances.

    Attributes:
        max_dim (int): Largest matrix dimension accepted from inputs/generators.
        max_kron_dim (int): Largest Kronecker product dimension.
        max_superop_dim (int): Largest superoperator dimension (d squared).
        max_order (int): Largest transform order (exact binomial guard).
        atol (float): Absolute zero-test tolerance.
        rtol (float): Relative zero-test tolerance, multiplied by a check's scale.
        strictness_factor (float): Factor a residual must exceed the
            threshold by to count as bounded away from zero.
        ill_conditioned_limit (float): Condition number cap for the
            core-nilpotent basis.
        generation_retries (int): Seed retries before a generator gives up.
        log_level (str): Logging level name.
    """

    max_dim: int = Field(default=16, ge=1, le=64)
    max_kron_dim: int = Field(default=64, ge=1)
    max_superop_dim: int = Field(default=4096, ge=1)
    max_order: int = Field(default=62, ge=1, le=62)
    atol: float = Field(default=1e-12, ge=0.0)
    rtol: float = Field(default=1e-9, ge=0.0)
    strictness_factor: float = Field(default=1e3, gt=0.0)
    ill_conditioned_limit: float = Field(default=1e8, gt=1.0)
    generation_retries: int = Field(default=50, ge=1)
    log_level: str = "WARNING"

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Accept only the standard logging level names."""
        name = v.strip().upper()
        if name not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Unknown log level: {v}")
        return name


def get_settings(**overrides) -> Settings:
    """
    Build the active settings from defaults, environment and overrides.

    Parameters:
        **overrides: Field values that take precedence over the environment.

    Returns:
        Settings: Validated settings.

    Raises:
        ConfigurationError: If an environment value or override is invalid.
    """
    values = {}
    env_dim = os.environ.get("ISOSYM_MAX_DIM")
    if env_dim is not None:
        values["max_dim"] = env_dim
    env_level = os.environ.get("ISOSYM_LOG_LEVEL")
    if env_level is not None:
        values["log_level"] = env_level
    values.update({k: v for k, v in overrides.items() if v is not None})

    try:
        return Settings(**values)
    except ValidationError as exc:
        raise ConfigurationError(f"Invalid settings: {exc.errors()[0]['msg']}") from exc


def configure_logging(level: Optional[str] = None) -> None:
    """
    Configure the root logger to write to stderr.

    Parameters:
        level (Optional[str]): Level name; falls back to the settings value.
    """
    name = level or get_settings().log_level
    logging.basicConfig(
        level=getattr(logging, name.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )
