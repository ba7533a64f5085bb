"""
Shared plumbing for the experiment drivers: grid and parameter setup,
seeded random densities, probe placement and report construction.
"""

from __future__ import annotations

import logging
from collections.abc import Callable

import numpy as np
from numpy.typing import NDArray

from torus_debye.calculus import ModalScalar, surface_calculus
from torus_debye.config import ExperimentConfig, as_complex, config_hash
from torus_debye.debye import MaterialParams, surface_currents
from torus_debye.fields import SurfaceSources
from torus_debye.geometry import SurfaceGrid, build_surface_grid, load_geometry, reference_torus
from torus_debye.kernels import Wavenumber
from torus_debye.models import ExperimentKind, ExperimentReport
from torus_debye.solver import SolverContext

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[int, int, str], None]


class HarnessError(Exception):
    """An experiment could not be set up."""


def _no_progress(_current: int, _total: int, _description: str) -> None:
    return None


def progress_or_noop(progress: ProgressCallback | None) -> ProgressCallback:
    """The given callback, or one that ignores updates."""
    return progress if progress is not None else _no_progress


def build_grid(config: ExperimentConfig) -> SurfaceGrid:
    """
    Discretize the configured surface.

    The node count stored in a geometry file is used unless the
    configuration sets `geometry.nodes` explicitly.
    """
    geometry = config.geometry
    if geometry.file is None:
        curve, file_nodes = reference_torus(), None
    else:
        curve, file_nodes = load_geometry(geometry.file)
    explicit = "nodes" in geometry.model_fields_set
    n_nodes = geometry.nodes if explicit or file_nodes is None else file_nodes
    logger.debug("Building surface grid with N=%d", n_nodes)
    return build_surface_grid(curve, n_nodes)


def build_context(config: ExperimentConfig, grid: SurfaceGrid) -> SolverContext:
    """Cycles and kernel cache for the configured quadrature."""
    return SolverContext.create(
        grid,
        config.quadrature,
        disk_radial=config.geometry.disk_radial,
        disk_azimuthal=config.geometry.disk_azimuthal,
    )


def build_params(config: ExperimentConfig, omega: float) -> MaterialParams:
    """Material parameters at one frequency, with conductivities folded in."""
    m = config.material
    return MaterialParams.from_conductivity(
        as_complex(m.eps0),
        as_complex(m.mu0),
        as_complex(m.eps1),
        as_complex(m.mu1),
        omega,
        sigma0=m.sigma0 if omega > 0 else 0.0,
        sigma1=m.sigma1 if omega > 0 else 0.0,
    )


def new_report(
    config: ExperimentConfig, kind: ExperimentKind, seed: int | None = None
) -> ExperimentReport:
    """Empty report carrying the configuration's provenance."""
    return ExperimentReport(
        experiment_id=config.output.experiment_id,
        kind=kind,
        config_hash=config_hash(config),
        seed=seed,
    )


def random_density(
    rng: np.random.Generator,
    grid: SurfaceGrid,
    mode: int,
    band_limit: int,
    mean_zero: bool = True,
) -> ModalScalar:
    """
    Random trigonometric polynomial of degree `band_limit` in t.

    Coefficients decay like 1/(1 + |m|) so the density is smooth on the
    scale of the grid; at mode 0 the surface mean is removed.
    """
    degrees = np.arange(-band_limit, band_limit + 1)
    coeffs = (rng.standard_normal(degrees.size) + 1j * rng.standard_normal(degrees.size)) / (
        1.0 + np.abs(degrees)
    )
    values = np.exp(1j * np.outer(grid.t, degrees)) @ coeffs
    if mode == 0 and mean_zero:
        values = values - surface_calculus(grid, 0).mean(values)
    return ModalScalar(mode, values)


def shell_points(
    rng: np.random.Generator,
    grid: SurfaceGrid,
    count: int,
    shell: tuple[float, float],
) -> NDArray[np.float64]:
    """
    Points on scaled copies of the meridian curve at random azimuths.

    A point is γ_s(t) rotated by θ, where γ_s is the generating curve scaled
    by s about the tube center and (t, s, θ) are uniform on
    [0, 2π) × shell × [0, 2π).
    """
    lo, hi = min(shell), max(shell)
    t = rng.uniform(0.0, 2 * np.pi, count)
    s = rng.uniform(lo, hi, count)
    theta = rng.uniform(0.0, 2 * np.pi, count)
    sample = grid.curve.evaluate(t)
    rho_c, z_c = grid.curve.center
    rho = rho_c + s * (sample.rho - rho_c)
    z = z_c + s * (sample.z - z_c)
    if np.any(rho <= 0):
        raise HarnessError(f"Probe shell {shell} reaches the axis")
    return np.column_stack([rho * np.cos(theta), rho * np.sin(theta), z])


def relative_l2(approx: NDArray[np.complex128], exact: NDArray[np.complex128]) -> float:
    """‖approx − exact‖/‖exact‖, or the absolute error when exact vanishes."""
    diff = float(np.linalg.norm(np.asarray(approx) - np.asarray(exact)))
    scale = float(np.linalg.norm(exact))
    return diff / scale if scale > 0 else diff


def random_surface_sources(
    rng: np.random.Generator,
    grid: SurfaceGrid,
    mode: int,
    k: Wavenumber,
    band_limit: int,
    harmonic: bool = True,
) -> SurfaceSources:
    """
    Random Debye data with consistent currents.

    r and q are random mean-zero densities; the currents add random
    divergence-free parts ⋆₂dΓp and, at mode 0 with `harmonic`, random
    harmonic parts, so d*Γj = ikr and d*Γm = ikq hold exactly.
    """
    r = random_density(rng, grid, mode, band_limit)
    q = random_density(rng, grid, mode, band_limit)
    potential_j = random_density(rng, grid, mode, band_limit, mean_zero=False)
    potential_m = random_density(rng, grid, mode, band_limit, mean_zero=False)
    a_j = a_m = None
    if mode == 0 and harmonic:
        a_j = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        a_m = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    j, m = surface_currents(grid, k, r, q, potential_j, potential_m, a_j, a_m)
    return SurfaceSources(mode, r.values, q.values, j, m)


def mode_rng(seed: int, mode: int) -> np.random.Generator:
    """Generator seeded by (seed, mode), independent of everything else."""
    return np.random.default_rng([seed, 2 * abs(mode) + int(mode < 0)])


def geometry_summary(config: ExperimentConfig) -> ExperimentReport:
    """
    Describe the discretized surface and its homology cycles.

    Returns:
        Report with one (quantity, value) row per property.
    """
    grid = build_grid(config)
    context = build_context(config, grid)
    curve = grid.curve
    disk = context.cycles.disk
    center_rho, center_z = curve.center
    report = new_report(config, ExperimentKind.GEOMETRY)
    for quantity, value in (
        ("nodes", grid.n_nodes),
        ("bandwidth", curve.bandwidth),
        ("center_rho", center_rho),
        ("center_z", center_z),
        ("tube_diameter", curve.tube_diameter),
        ("rho_min", float(np.min(grid.rho))),
        ("rho_max", float(np.max(grid.rho))),
        ("node_spacing", grid.h),
        ("surface_area", grid.surface_area()),
        ("enclosed_volume", grid.enclosed_volume()),
        ("b_cycle_radius", context.cycles.b_radius),
        ("disk_radius", disk.radius),
        ("disk_height", disk.height),
        ("disk_area", disk.area),
    ):
        report.add_row(quantity=quantity, value=value)
    return report
