"""
Pytest configuration and shared fixtures.
"""

from pathlib import Path

import pytest

from torus_debye.config import ExperimentConfig, QuadratureConfig
from torus_debye.debye import MaterialParams
from torus_debye.geometry import GeneratingCurve, SurfaceGrid, build_surface_grid, reference_torus
from torus_debye.kernels import ModalTableCache
from torus_debye.solver import SolverContext

# Smallest grid the order-16 correction fits on with room to spare.
SMALL_NODES = 48
# Resolves the reference torus well enough for 1e-8 field checks.
FINE_NODES = 96


@pytest.fixture(scope="session")
def curve() -> GeneratingCurve:
    """The reference star-shaped torus."""
    return reference_torus()


@pytest.fixture(scope="session")
def circular_curve() -> GeneratingCurve:
    """Circular torus with major radius 2 and minor radius 1."""
    return GeneratingCurve.from_fourier(rho_cos=[2.0, 1.0], z_sin=[0.0, 1.0])


@pytest.fixture(scope="session")
def small_grid(curve: GeneratingCurve) -> SurfaceGrid:
    """Reference torus at N = 48."""
    return build_surface_grid(curve, SMALL_NODES)


@pytest.fixture(scope="session")
def fine_grid(curve: GeneratingCurve) -> SurfaceGrid:
    """Reference torus at N = 96."""
    return build_surface_grid(curve, FINE_NODES)


@pytest.fixture(scope="session")
def quadrature() -> QuadratureConfig:
    """Default quadrature settings."""
    return QuadratureConfig()


@pytest.fixture(scope="session")
def table_cache(small_grid: SurfaceGrid, quadrature: QuadratureConfig) -> ModalTableCache:
    """Kernel tables shared by the operator tests."""
    return ModalTableCache(small_grid, quadrature)


@pytest.fixture(scope="session")
def context(small_grid: SurfaceGrid, quadrature: QuadratureConfig) -> SolverContext:
    """Cycles and kernel cache on the small grid."""
    return SolverContext.create(small_grid, quadrature, disk_radial=12, disk_azimuthal=16)


@pytest.fixture(scope="session")
def fine_context(fine_grid: SurfaceGrid, quadrature: QuadratureConfig) -> SolverContext:
    """Cycles and kernel cache on the N = 96 grid."""
    return SolverContext.create(fine_grid, quadrature, disk_radial=12, disk_azimuthal=16)


@pytest.fixture
def params() -> MaterialParams:
    """Default materials at ω = 1."""
    return MaterialParams(eps0=0.90, mu0=1.10, eps1=1.30, mu1=0.83, omega=1.0)


@pytest.fixture
def small_config() -> ExperimentConfig:
    """Configuration for quick end-to-end runs."""
    return ExperimentConfig(
        geometry={"nodes": SMALL_NODES, "disk_radial": 12, "disk_azimuthal": 16},
        sweep={
            "modes": [0],
            "omegas": [1.0],
            "tc_grid": [0.0, 1.0],
            "clutch_omegas": [1e-3, 1.0],
            "resonance_min": 0.5,
            "resonance_max": 1.0,
            "resonance_points": 2,
        },
        manufactured={"interior_probes": 3, "exterior_probes": 3, "band_limit": 2},
    )


@pytest.fixture
def geometry_file(tmp_path: Path) -> Path:
    """Geometry YAML describing a circular torus."""
    path = tmp_path / "torus.yaml"
    path.write_text(
        "rho:\n  cos: [2.0, 1.0]\nz:\n  cos: [0.0]\n  sin: [0.0, 1.0]\nnodes: 48\n",
        encoding="utf-8",
    )
    return path
