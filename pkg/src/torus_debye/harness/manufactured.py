"""
Manufactured-solution experiments.

Two auxiliary surfaces are built from the scatterer: a shrunken copy
inside D and an enlarged copy outside it. Random Debye data on the inner
copy, radiating with the exterior parameters, gives a field that is an
exact exterior solution; random data on the outer copy with the interior
parameters gives an exact interior solution. Their traces on Γ are the
boundary data, and the solver must reproduce both fields at probe points.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from torus_debye.config import ExperimentConfig
from torus_debye.debye import (
    ClutchingMap,
    DebyeSourceSet,
    MaterialParams,
    ParameterError,
)
from torus_debye.fields import (
    FieldEvaluator,
    Medium,
    NearEvaluationError,
    SurfaceSources,
    dielectric_field_sources,
    pec_field_sources,
)
from torus_debye.geometry import SurfaceGrid, build_surface_grid
from torus_debye.harness.common import (
    HarnessError,
    ProgressCallback,
    build_context,
    build_grid,
    build_params,
    mode_rng,
    new_report,
    progress_or_noop,
    random_surface_sources,
    relative_l2,
    shell_points,
)
from torus_debye.models import ExperimentKind, ExperimentReport
from torus_debye.solver import (
    BoundaryData,
    ConditioningError,
    PecBoundaryData,
    SolverContext,
    assemble_dielectric,
    assemble_pec,
    solve,
)

logger = logging.getLogger(__name__)

# Auxiliary surfaces must keep at least this fraction of the tube diameter from Γ.
MIN_SEPARATION = 0.1
# Probes must keep at least this fraction of the tube diameter from Γ.
PROBE_SEPARATION = 0.05

CellError = (ConditioningError, ParameterError, NearEvaluationError)


@dataclass(frozen=True, eq=False)
class ManufacturedProblem:
    """
    Auxiliary surfaces and probe points around a scatterer.

    Attributes:
        grid: The scatterer Γ.
        inner: Shrunken copy of Γ inside D (carries the exterior solution).
        outer: Enlarged copy of Γ outside D (carries the interior solution).
        interior_probes: Points in D, shape (P, 3).
        exterior_probes: Points in Ω, shape (Q, 3).
        seed: Seed of the probe placement and the random data.
    """

    grid: SurfaceGrid
    inner: SurfaceGrid
    outer: SurfaceGrid
    interior_probes: NDArray[np.float64]
    exterior_probes: NDArray[np.float64]
    seed: int


@dataclass(frozen=True, eq=False)
class ManufacturedFields:
    """Sources of the exact exterior and interior fields for one mode."""

    mode: int
    exterior: SurfaceSources
    interior: SurfaceSources


def _check_separation(grid: SurfaceGrid, aux: SurfaceGrid, inside: bool) -> None:
    curve = grid.curve
    limit = MIN_SEPARATION * curve.tube_diameter
    for rho, z in zip(aux.rho, aux.z):
        if curve.contains(rho, z) != inside:
            where = "inside" if inside else "outside"
            raise HarnessError(f"Auxiliary surface is not strictly {where} the scatterer")
        if curve.distance(rho, z) < limit:
            raise HarnessError(
                f"Auxiliary surface comes within {limit:.3g} of the scatterer"
            )


def _check_probes(grid: SurfaceGrid, points: NDArray[np.float64], inside: bool) -> None:
    curve = grid.curve
    limit = PROBE_SEPARATION * curve.tube_diameter
    for x, y, z in points:
        rho = float(np.hypot(x, y))
        if curve.contains(rho, z) != inside or curve.distance(rho, z) < limit:
            raise HarnessError(f"Probe ({x:.3f}, {y:.3f}, {z:.3f}) is misplaced")


def build_manufactured_problem(config: ExperimentConfig, grid: SurfaceGrid) -> ManufacturedProblem:
    """
    Build auxiliary surfaces and probes, verifying their placement.

    Raises:
        HarnessError: If a surface or probe is on the wrong side of Γ or too close to it.
    """
    mc = config.manufactured
    inner = build_surface_grid(grid.curve.scaled(mc.inner_scale), grid.n_nodes)
    outer = build_surface_grid(grid.curve.scaled(mc.outer_scale), grid.n_nodes)
    _check_separation(grid, inner, inside=True)
    _check_separation(grid, outer, inside=False)

    rng = np.random.default_rng(mc.seed)
    interior = shell_points(rng, grid, mc.interior_probes, mc.interior_shell)
    exterior = shell_points(rng, grid, mc.exterior_probes, mc.exterior_shell)
    _check_probes(grid, interior, inside=True)
    _check_probes(grid, exterior, inside=False)
    return ManufacturedProblem(grid, inner, outer, interior, exterior, mc.seed)


def manufactured_fields(
    problem: ManufacturedProblem,
    config: ExperimentConfig,
    params: MaterialParams,
    mode: int,
) -> ManufacturedFields:
    """
    Random band-limited data on both auxiliary surfaces.

    The random draws depend on the seed and the mode only, so the same
    densities are used at every frequency.
    """
    mc = config.manufactured
    rng = mode_rng(problem.seed, mode)
    exterior = random_surface_sources(
        rng, problem.inner, mode, params.k1, mc.band_limit, mc.harmonic
    )
    interior = random_surface_sources(
        rng, problem.outer, mode, params.k0, mc.band_limit, mc.harmonic
    )
    return ManufacturedFields(mode, exterior, interior)


def disk_flux(
    evaluator: FieldEvaluator,
    sources: SurfaceSources,
    medium: Medium,
    context: SolverContext,
) -> complex:
    """∫_S H·ẑ dA over the spanning disk for mode-0 sources."""
    if sources.mode != 0:
        return 0j
    disk = context.cycles.disk
    radii, weights = disk.rings()
    points = np.column_stack([radii, np.zeros_like(radii), np.full_like(radii, disk.height)])
    _, h = evaluator.evaluate_many(points, sources, medium)
    return complex(np.sum(weights * h[:, 2]))


@dataclass(frozen=True)
class DielectricCell:
    """Outcome of one manufactured dielectric solve."""

    mode: int
    omega: float
    condition: float
    residual: float
    e_exterior: float
    h_exterior: float
    e_interior: float
    h_interior: float
    source_norm: float
    flagged: bool

    @property
    def max_error(self) -> float:
        """Largest of the four field errors."""
        return max(self.e_exterior, self.h_exterior, self.e_interior, self.h_interior)


@dataclass(frozen=True)
class PecCell:
    """Outcome of one manufactured perfect-conductor solve."""

    mode: int
    omega: float
    condition: float
    residual: float
    e_exterior: float
    h_exterior: float
    flagged: bool


def solve_dielectric_cell(
    problem: ManufacturedProblem,
    config: ExperimentConfig,
    context: SolverContext,
    mode: int,
    omega: float,
) -> DielectricCell:
    """
    Manufacture data at one (mode, ω), solve, and measure the field errors.

    Raises:
        ConditioningError: If the system is numerically singular.
        ParameterError: If the material parameters fail a guard.
    """
    grid = problem.grid
    params = build_params(config, omega)
    exact = manufactured_fields(problem, config, params, mode)
    ext_medium = Medium.exterior(params)
    int_medium = Medium.interior(params)

    inner_eval = FieldEvaluator(problem.inner, config.quadrature)
    outer_eval = FieldEvaluator(problem.outer, config.quadrature)
    e_ext, h_ext = inner_eval.evaluate_many(grid.positions, exact.exterior, ext_medium)
    e_int, h_int = outer_eval.evaluate_many(grid.positions, exact.interior, int_medium)
    data = BoundaryData.from_fields(grid, mode, params, e_ext, h_ext, e_int, h_int)

    clutch = ClutchingMap(config.sweep.tc)
    system = assemble_dielectric(mode, params, clutch, data, context)
    sources = solve(system)
    ext_sources, int_sources = dielectric_field_sources(sources, params, clutch, grid)

    evaluator = FieldEvaluator(grid, config.quadrature)
    e_ext_true, h_ext_true = inner_eval.evaluate_many(
        problem.exterior_probes, exact.exterior, ext_medium
    )
    e_int_true, h_int_true = outer_eval.evaluate_many(
        problem.interior_probes, exact.interior, int_medium
    )
    e_ext_num, h_ext_num = evaluator.evaluate_many(problem.exterior_probes, ext_sources, ext_medium)
    e_int_num, h_int_num = evaluator.evaluate_many(problem.interior_probes, int_sources, int_medium)

    return DielectricCell(
        mode=mode,
        omega=omega,
        condition=system.condition_number(),
        residual=float(system.residual_norm or 0.0),
        e_exterior=relative_l2(e_ext_num, e_ext_true),
        h_exterior=relative_l2(h_ext_num, h_ext_true),
        e_interior=relative_l2(e_int_num, e_int_true),
        h_interior=relative_l2(h_int_num, h_int_true),
        source_norm=sources.norm(),
        flagged=system.flagged,
    )


def solve_pec_cell(
    problem: ManufacturedProblem,
    config: ExperimentConfig,
    context: SolverContext,
    mode: int,
    omega: float,
) -> PecCell:
    """
    Perfect-conductor analogue of `solve_dielectric_cell` (exterior field only).

    Raises:
        ConditioningError: If the system is numerically singular.
        ParameterError: If the material parameters fail a guard.
    """
    grid = problem.grid
    params = build_params(config, omega)
    exact = manufactured_fields(problem, config, params, mode).exterior
    medium = Medium.exterior(params)

    inner_eval = FieldEvaluator(problem.inner, config.quadrature)
    e_field, h_field = inner_eval.evaluate_many(grid.positions, exact, medium)
    flux = disk_flux(inner_eval, exact, medium, context)
    data = PecBoundaryData.from_fields(grid, mode, e_field, h_field, flux)

    system = assemble_pec(mode, params, data, context, b_row=config.sweep.pec_b_row)
    sources: DebyeSourceSet = solve(system)
    field_sources = pec_field_sources(sources, params.k1, grid)

    evaluator = FieldEvaluator(grid, config.quadrature)
    e_true, h_true = inner_eval.evaluate_many(problem.exterior_probes, exact, medium)
    e_num, h_num = evaluator.evaluate_many(problem.exterior_probes, field_sources, medium)
    return PecCell(
        mode=mode,
        omega=omega,
        condition=system.condition_number(),
        residual=float(system.residual_norm or 0.0),
        e_exterior=relative_l2(e_num, e_true),
        h_exterior=relative_l2(h_num, h_true),
        flagged=system.flagged,
    )


def _cells(config: ExperimentConfig) -> list[tuple[int, float]]:
    return [(mode, omega) for mode in config.sweep.modes for omega in config.sweep.omegas]


def run_manufactured(
    config: ExperimentConfig, progress: ProgressCallback | None = None
) -> ExperimentReport:
    """
    Dielectric manufactured-solution table over the configured modes and ω.

    Each row carries the condition number, the relative solve residual and
    the relative l² errors of E and H at the interior and exterior probes.
    Cells that fail are reported in `errors` and skipped.
    """
    update = progress_or_noop(progress)
    grid = build_grid(config)
    problem = build_manufactured_problem(config, grid)
    context = build_context(config, grid)
    report = new_report(config, ExperimentKind.DIELECTRIC, seed=problem.seed)
    report.notes.append(
        f"N={grid.n_nodes}, order={config.quadrature.order}, tc={config.sweep.tc:g}"
    )

    cells = _cells(config)
    for index, (mode, omega) in enumerate(cells):
        update(index, len(cells), f"Dielectric n={mode}, ω={omega:g}")
        try:
            cell = solve_dielectric_cell(problem, config, context, mode, omega)
        except CellError as e:
            logger.warning("Dielectric cell n=%d, ω=%g failed: %s", mode, omega, e)
            report.errors.append(f"mode {mode}, omega {omega:g}: {e}")
            continue
        if cell.flagged:
            report.warnings.append(f"mode {mode}, omega {omega:g}: azimuthal quadrature flagged")
        report.add_row(
            mode=mode,
            omega=omega,
            condition=cell.condition,
            residual=cell.residual,
            e_exterior=cell.e_exterior,
            h_exterior=cell.h_exterior,
            e_interior=cell.e_interior,
            h_interior=cell.h_interior,
            max_error=cell.max_error,
            source_norm=cell.source_norm,
        )
    update(len(cells), len(cells), "Done")
    return report


def run_pec(config: ExperimentConfig, progress: ProgressCallback | None = None) -> ExperimentReport:
    """
    Perfect-conductor solves over the configured modes and ω.

    Rows carry conditioning, the solve residual and the manufactured
    exterior-field errors.
    """
    update = progress_or_noop(progress)
    grid = build_grid(config)
    problem = build_manufactured_problem(config, grid)
    context = build_context(config, grid)
    report = new_report(config, ExperimentKind.PEC, seed=problem.seed)
    report.notes.append(f"N={grid.n_nodes}, B-row={config.sweep.pec_b_row}")

    cells = _cells(config)
    for index, (mode, omega) in enumerate(cells):
        update(index, len(cells), f"PEC n={mode}, ω={omega:g}")
        try:
            cell = solve_pec_cell(problem, config, context, mode, omega)
        except CellError as e:
            logger.warning("PEC cell n=%d, ω=%g failed: %s", mode, omega, e)
            report.errors.append(f"mode {mode}, omega {omega:g}: {e}")
            continue
        if cell.flagged:
            report.warnings.append(f"mode {mode}, omega {omega:g}: azimuthal quadrature flagged")
        report.add_row(
            mode=mode,
            omega=omega,
            b_row=config.sweep.pec_b_row,
            condition=cell.condition,
            residual=cell.residual,
            e_exterior=cell.e_exterior,
            h_exterior=cell.h_exterior,
        )
    update(len(cells), len(cells), "Done")
    return report

