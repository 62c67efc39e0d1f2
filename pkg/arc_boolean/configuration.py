"""Configuration module for the arc polygon boolean tools.

Defines the configuration models and the function to load configuration from a YAML file.
"""

import logging
import os
from pathlib import Path

import yaml
from pydantic import BaseModel, Field, field_validator, model_validator

from arc_boolean.errors import InvalidInputError
from arc_boolean.geometry import Tolerances

logger = logging.getLogger(__name__)

EPS_ENV_VAR = "ARC_BOOLEAN_EPS"
METHODS = ("re2l", "naive", "standard")


class GeneratorConfiguration(BaseModel):
    """Random polygon generator settings."""

    arc_fraction: float = Field(default=0.5, ge=0, le=1)
    coordinate_range: tuple[float, float] = (0.0, 100.0)
    max_attempts: int = Field(default=32, ge=1)
    radial_jitter: float = Field(default=0.35, gt=0, lt=1)
    max_bulge: float = Field(default=0.35, gt=0, le=1)

    @field_validator("coordinate_range")
    @classmethod
    def check_range(cls, v: tuple[float, float]) -> tuple[float, float]:
        """Require a non-empty interval."""
        if v[0] >= v[1]:
            raise ValueError(f"Invalid coordinate range {v}. Expected [low, high] with low < high.")
        return v


class BenchConfiguration(BaseModel):
    """Benchmark harness settings."""

    sizes: list[int] = Field(default=[5, 10, 20, 30, 40, 50], min_length=1)
    trials: int = Field(default=100, ge=1)
    methods: list[str] = Field(default=list(METHODS), min_length=1)
    min_trials: int = Field(default=1, ge=1)
    workers: int = Field(default=1, ge=1)
    max_skip_ratio: float = Field(default=0.02, ge=0, le=1)

    @field_validator("sizes")
    @classmethod
    def check_sizes(cls, v: list[int]) -> list[int]:
        """Polygons need at least three edges."""
        if any(n < 3 for n in v):
            raise ValueError(f"Invalid sizes {v}. Every size must be at least 3.")
        return v

    @field_validator("methods")
    @classmethod
    def check_methods(cls, v: list[str]) -> list[str]:
        """Only known methods, each once."""
        unknown = sorted(set(v) - set(METHODS))
        if unknown:
            raise ValueError(f"Unknown methods {unknown}. Expected a subset of {list(METHODS)}.")
        return list(dict.fromkeys(v))

    @model_validator(mode="after")
    def check_min_trials(self) -> "BenchConfiguration":
        """The trial count may not drop below the configured minimum."""
        if self.trials < self.min_trials:
            raise ValueError(f"trials ({self.trials}) is below min_trials ({self.min_trials})")
        return self


class RenderConfiguration(BaseModel):
    """SVG rendering settings."""

    margin: float = Field(default=0.05, ge=0, lt=0.5)
    stroke_width: float = Field(default=0.004, gt=0)
    marker_radius: float = Field(default=0.008, gt=0)


class Configuration(BaseModel):
    """Top-level configuration."""

    tolerances: Tolerances = Tolerances()
    generator: GeneratorConfiguration = GeneratorConfiguration()
    bench: BenchConfiguration = BenchConfiguration()
    render: RenderConfiguration = RenderConfiguration()


class ConfigurationError(InvalidInputError):
    """Raised when the configuration file cannot be loaded or is invalid."""


def load_configuration_from_file(config_file: Path, required: bool = True) -> Configuration:
    """Load and validate configuration from a YAML file.

    :param config_file: Path to the YAML configuration file.
    :param required: Whether a missing file is an error; if not, defaults are returned.
    :return: Validated Configuration object.
    :raises ConfigurationError: If the file is missing, unparseable, or invalid.
    """
    logger.debug(f"Loading configuration from '{config_file}'...")
    try:
        with open(config_file) as f:
            data = yaml.safe_load(f)
    except FileNotFoundError as e:
        if not required:
            logger.debug(f"No configuration file at '{config_file}', using defaults")
            return Configuration()
        raise ConfigurationError(e) from e
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Failed to parse configuration file: {e}") from e

    try:
        return Configuration.model_validate(data or {})
    except Exception as e:
        raise ConfigurationError(f"Configuration validation error: {e}") from e


def resolve_tolerances(
    config: Configuration,
    file_tolerances: Tolerances | None = None,
    eps: float | None = None,
) -> Tolerances:
    """Tolerances after applying overrides.

    Precedence, highest first: ``eps`` (the ``--eps`` flag), the ``ARC_BOOLEAN_EPS``
    environment variable, the polygon file header, the configuration file.

    :raises ConfigurationError: If an override is not a positive number.
    """
    tol = file_tolerances if file_tolerances is not None else config.tolerances
    if eps is None and (env := os.environ.get(EPS_ENV_VAR)):
        try:
            eps = float(env)
        except ValueError as e:
            raise ConfigurationError(f"{EPS_ENV_VAR}={env!r} is not a number") from e
    if eps is None:
        return tol
    try:
        return Tolerances.model_validate(tol.model_dump() | {"eps_pt": eps})
    except Exception as e:
        raise ConfigurationError(f"Invalid eps_pt override {eps}: {e}") from e
