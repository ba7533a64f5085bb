"""
Configuration loading and validation for torus-debye.

This module handles experiment configuration files, validation, and
provides the defaults used by the library and the CLI: the reference
torus at N = 200, the order-16 correction, and the material constants
ε₁ = 1.30, μ₁ = 0.83, ε₀ = 0.90, μ₀ = 1.10.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Annotated, Any, Literal, Optional

import yaml
from pydantic import BaseModel, BeforeValidator, Field, field_validator


def _parse_complex(value: Any) -> tuple[float, float]:
    """Accept a real number, a `[re, im]` pair or a Python complex literal."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError("complex values are given as [re, im]")
        return float(value[0]), float(value[1])
    if isinstance(value, str):
        c = complex(value.replace(" ", ""))
        return c.real, c.imag
    if isinstance(value, complex):
        return value.real, value.imag
    return float(value), 0.0


ComplexPair = Annotated[tuple[float, float], BeforeValidator(_parse_complex)]


def as_complex(pair: tuple[float, float]) -> complex:
    """Convert a validated `[re, im]` pair."""
    return complex(pair[0], pair[1])


class GeometryConfig(BaseModel):
    """Configuration for the generating curve and its discretization."""

    file: Optional[Path] = Field(
        default=None,
        description="Geometry YAML file; the built-in reference torus when unset.",
    )
    nodes: int = Field(
        default=200,
        ge=16,
        description="Number of equispaced nodes N on the generating curve (even).",
    )
    disk_radial: int = Field(
        default=16,
        ge=2,
        description="Gauss-Legendre points in radius on the spanning disk.",
    )
    disk_azimuthal: int = Field(
        default=64,
        ge=4,
        description="Trapezoid points in angle on the spanning disk.",
    )

    @field_validator("nodes")
    @classmethod
    def _even(cls, value: int) -> int:
        if value % 2:
            raise ValueError("nodes must be even")
        return value


class QuadratureConfig(BaseModel):
    """Configuration for singular and azimuthal quadrature."""

    order: Literal[8, 16] = Field(
        default=16,
        description="Alpert correction order.",
    )
    azimuthal_tol: float = Field(
        default=1e-12,
        gt=0.0,
        lt=1.0,
        description="Relative tolerance for azimuthal integrals.",
    )
    max_depth: int = Field(
        default=40,
        ge=1,
        description="Maximum bisection depth of the adaptive azimuthal integrator.",
    )
    panel_order: int = Field(
        default=16,
        ge=4,
        le=64,
        description="Gauss-Legendre points per azimuthal panel.",
    )
    oversampling: float = Field(
        default=6.0,
        gt=0.0,
        description="Field evaluation: curve nodes per target distance, per node spacing.",
    )
    near_threshold: float = Field(
        default=1e-3,
        gt=0.0,
        description="Smallest evaluation distance, as a fraction of the tube diameter.",
    )


class MaterialConfig(BaseModel):
    """Permittivity and permeability of the interior (0) and exterior (1) media."""

    eps0: ComplexPair = Field(default=(0.90, 0.0), description="Interior permittivity ε₀.")
    mu0: ComplexPair = Field(default=(1.10, 0.0), description="Interior permeability μ₀.")
    eps1: ComplexPair = Field(default=(1.30, 0.0), description="Exterior permittivity ε₁.")
    mu1: ComplexPair = Field(default=(0.83, 0.0), description="Exterior permeability μ₁.")
    sigma0: float = Field(default=0.0, ge=0.0, description="Interior conductivity σ₀.")
    sigma1: float = Field(default=0.0, ge=0.0, description="Exterior conductivity σ₁.")


class SweepConfig(BaseModel):
    """Configuration for modes, frequencies and clutching parameters."""

    modes: list[int] = Field(default=[0], description="Azimuthal modes to solve.")
    omegas: list[float] = Field(
        default=[1e-6, 1e-4, 1e-2, 1.0],
        description="Angular frequencies ω for solves and accuracy sweeps.",
    )
    tc: float = Field(default=0.0, description="Clutching parameter t_c.")
    tc_grid: list[float] = Field(
        default=[i * 3.141592653589793 / 9 for i in range(10)],
        description="Clutching parameters for the conditioning sweep.",
    )
    clutch_omegas: list[float] = Field(
        default=[10 ** (-4 + 4 * i / 9) for i in range(10)],
        description="Frequencies for the conditioning sweep.",
    )
    resonance_min: float = Field(default=0.5, gt=0.0, description="Resonance scan lower ω.")
    resonance_max: float = Field(default=5.0, gt=0.0, description="Resonance scan upper ω.")
    resonance_points: int = Field(default=50, ge=2, description="Resonance scan samples.")
    pec_b_row: Literal["difference", "direct"] = Field(
        default="difference",
        description="PEC B-cycle row: difference kernel or subtraction.",
    )

    @field_validator("omegas", "clutch_omegas")
    @classmethod
    def _non_negative(cls, values: list[float]) -> list[float]:
        if any(w < 0 for w in values):
            raise ValueError("frequencies must be non-negative")
        return values


class ManufacturedConfig(BaseModel):
    """Configuration for manufactured-solution runs."""

    inner_scale: float = Field(default=0.5, gt=0.0, lt=1.0, description="Inner surface scale.")
    outer_scale: float = Field(default=1.5, gt=1.0, description="Outer surface scale.")
    band_limit: int = Field(default=4, ge=0, description="Fourier band limit of random sources.")
    harmonic: bool = Field(default=True, description="Include harmonic source components.")
    interior_probes: int = Field(default=20, ge=1, description="Probe points inside D.")
    exterior_probes: int = Field(default=20, ge=1, description="Probe points outside D.")
    interior_shell: tuple[float, float] = Field(
        default=(0.6, 0.8), description="Interior probe shell, as scale factors."
    )
    exterior_shell: tuple[float, float] = Field(
        default=(1.2, 1.4), description="Exterior probe shell, as scale factors."
    )
    seed: int = Field(default=20240611, description="Random seed for sources and probes.")


class OutputConfig(BaseModel):
    """Configuration for report output."""

    experiment_id: str = Field(default="torus-debye", description="Experiment identifier.")
    path: Optional[Path] = Field(default=None, description="Output file; stdout when unset.")
    format: Literal["csv", "json", "yaml", "text"] = Field(
        default="csv", description="Report format."
    )


class ExperimentConfig(BaseModel):
    """Root configuration model for torus-debye experiments."""

    geometry: GeometryConfig = Field(default_factory=GeometryConfig)
    quadrature: QuadratureConfig = Field(default_factory=QuadratureConfig)
    material: MaterialConfig = Field(default_factory=MaterialConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    manufactured: ManufacturedConfig = Field(default_factory=ManufacturedConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    class Config:
        """Pydantic model configuration."""

        extra = "forbid"


def load_config(config_path: Optional[Path] = None) -> ExperimentConfig:
    """
    Load an experiment configuration from a YAML file.

    Args:
        config_path: Path to the configuration file. If None, returns defaults.

    Returns:
        ExperimentConfig with loaded or default values.

    Raises:
        FileNotFoundError: If the specified config file doesn't exist.
        ValueError: If the config file is invalid.
    """
    if config_path is None:
        return ExperimentConfig()

    if not config_path.exists():
        raise FileNotFoundError(f"Configuration file not found: {config_path}")

    try:
        with open(config_path, encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
        config = ExperimentConfig(**data)
    except yaml.YAMLError as e:
        raise ValueError(f"Invalid YAML in configuration file: {e}") from e
    except Exception as e:
        raise ValueError(f"Failed to load configuration: {e}") from e

    geometry_file = config.geometry.file
    if geometry_file is not None and not geometry_file.is_absolute():
        resolved = (config_path.parent / geometry_file).resolve()
        config.geometry.file = resolved
    return config


def find_config_file(start_path: Path) -> Optional[Path]:
    """
    Search for a configuration file starting from the given path.

    Searches for `.torus-debye.yaml` or `.torus-debye.yml` in the start
    path and parent directories.

    Args:
        start_path: Directory to start searching from.

    Returns:
        Path to the config file if found, None otherwise.
    """
    config_names = [".torus-debye.yaml", ".torus-debye.yml"]

    current = start_path.resolve()
    while current != current.parent:
        for name in config_names:
            config_path = current / name
            if config_path.exists():
                return config_path
        current = current.parent

    return None


def config_hash(config: ExperimentConfig) -> str:
    """SHA-256 of the canonical JSON form of a configuration."""
    payload = json.dumps(config.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()
