"""
Parameter sweeps: conditioning against the clutching parameter and ω,
accuracy against ω, and the resonance scan.
"""

from __future__ import annotations

import logging
from typing import Any

import numpy as np

from torus_debye.config import ExperimentConfig
from torus_debye.debye import ClutchingMap, ParameterError
from torus_debye.harness.common import (
    ProgressCallback,
    build_context,
    build_grid,
    build_params,
    new_report,
    progress_or_noop,
)
from torus_debye.harness.manufactured import (
    CellError,
    build_manufactured_problem,
    solve_dielectric_cell,
)
from torus_debye.models import ExperimentKind, ExperimentReport
from torus_debye.solver import BoundaryData, SolverContext, assemble_dielectric, condition_number

logger = logging.getLogger(__name__)


def dielectric_condition(
    context: SolverContext,
    config: ExperimentConfig,
    mode: int,
    omega: float,
    tc: float,
) -> tuple[float, bool]:
    """Condition number and flag of the dielectric system at one (n, ω, t_c)."""
    params = build_params(config, omega)
    data = BoundaryData.zeros(mode, context.grid.n_nodes)
    system = assemble_dielectric(mode, params, ClutchingMap(tc), data, context)
    return condition_number(system), system.flagged


def run_clutch_sweep(
    config: ExperimentConfig, progress: ProgressCallback | None = None
) -> ExperimentReport:
    """
    Mode-0 condition numbers over the t_c grid × ω grid.

    Kernel tables depend on ω only, so each frequency's operators are
    built once and reused for every t_c.
    """
    update = progress_or_noop(progress)
    grid = build_grid(config)
    context = build_context(config, grid)
    report = new_report(config, ExperimentKind.CLUTCH_SWEEP)
    sweep = config.sweep
    total = len(sweep.clutch_omegas) * len(sweep.tc_grid)
    done = 0
    for omega in sweep.clutch_omegas:
        for tc in sweep.tc_grid:
            update(done, total, f"Clutch sweep ω={omega:g}, tc={tc:.3f}")
            done += 1
            try:
                cond, flagged = dielectric_condition(context, config, 0, omega, tc)
            except ParameterError as e:
                report.errors.append(f"omega {omega:g}, tc {tc:g}: {e}")
                continue
            if flagged:
                report.warnings.append(f"omega {omega:g}, tc {tc:g}: azimuthal quadrature flagged")
            report.add_row(tc=tc, omega=omega, condition=cond, flagged=flagged)
        context.cache.clear()
    update(total, total, "Done")

    zero_column = [row["condition"] for row in report.rows if row["tc"] == 0.0]
    if zero_column:
        report.notes.append(
            f"tc=0 condition spread over ω: {max(zero_column) / min(zero_column):.3g}"
        )
    ratio = _clutch_ratio(report.rows)
    if ratio is not None:
        omega_min, value = ratio
        report.notes.append(f"tc=π/2 / tc=0 condition at ω={omega_min:g}: {value:.3g}")
    return report


def _clutch_ratio(rows: list[dict[str, Any]]) -> tuple[float, float] | None:
    """cond(t_c ≈ π/2)/cond(t_c = 0) at the lowest swept ω, if both were solved."""
    if not rows:
        return None
    omega_min = min(row["omega"] for row in rows)
    lowest = [row for row in rows if row["omega"] == omega_min]
    base = [row["condition"] for row in lowest if row["tc"] == 0.0]
    others = [row for row in lowest if row["tc"] != 0.0]
    if not base or not others:
        return None
    quarter = min(others, key=lambda row: abs(row["tc"] - np.pi / 2))
    return omega_min, quarter["condition"] / base[0]


def run_accuracy_sweep(
    config: ExperimentConfig, progress: ProgressCallback | None = None
) -> ExperimentReport:
    """
    Manufactured-solution errors against ω for each configured mode.

    A note records, per mode, whether the error at the lowest frequency is
    no larger than at the highest.
    """
    update = progress_or_noop(progress)
    grid = build_grid(config)
    problem = build_manufactured_problem(config, grid)
    context = build_context(config, grid)
    report = new_report(config, ExperimentKind.ACCURACY_SWEEP, seed=problem.seed)

    omegas = sorted(config.sweep.omegas)
    cells = [(mode, omega) for mode in config.sweep.modes for omega in omegas]
    for index, (mode, omega) in enumerate(cells):
        update(index, len(cells), f"Accuracy n={mode}, ω={omega:g}")
        try:
            cell = solve_dielectric_cell(problem, config, context, mode, omega)
        except CellError as e:
            report.errors.append(f"mode {mode}, omega {omega:g}: {e}")
            continue
        report.add_row(
            mode=mode,
            omega=omega,
            e_exterior=cell.e_exterior,
            h_exterior=cell.h_exterior,
            e_interior=cell.e_interior,
            h_interior=cell.h_interior,
            max_error=cell.max_error,
        )
    update(len(cells), len(cells), "Done")

    for mode in config.sweep.modes:
        errors = [row["max_error"] for row in report.rows if row["mode"] == mode]
        if len(errors) >= 2:
            ordered = errors[0] <= errors[-1]
            report.notes.append(
                f"mode {mode}: error at lowest ω {'<=' if ordered else '>'} error at highest ω"
            )
    return report


def run_resonance_scan(
    config: ExperimentConfig, progress: ProgressCallback | None = None
) -> ExperimentReport:
    """
    Condition numbers on an even ω grid, looking for spurious resonances.

    A note records max/median of the condition number per mode.
    """
    update = progress_or_noop(progress)
    grid = build_grid(config)
    context = build_context(config, grid)
    report = new_report(config, ExperimentKind.RESONANCE_SCAN)
    sweep = config.sweep
    omegas = np.linspace(sweep.resonance_min, sweep.resonance_max, sweep.resonance_points)

    total = len(sweep.modes) * omegas.size
    done = 0
    for mode in sweep.modes:
        for omega in omegas:
            update(done, total, f"Resonance scan n={mode}, ω={omega:.3f}")
            done += 1
            try:
                cond, flagged = dielectric_condition(context, config, mode, float(omega), sweep.tc)
            except ParameterError as e:
                report.errors.append(f"mode {mode}, omega {omega:g}: {e}")
                continue
            report.add_row(mode=mode, omega=float(omega), condition=cond, flagged=flagged)
            # Tables at this ω are not needed again.
            context.cache.clear()
    update(total, total, "Done")

    for mode in sweep.modes:
        values = np.array([row["condition"] for row in report.rows if row["mode"] == mode])
        if values.size:
            ratio = float(np.max(values) / np.median(values))
            report.notes.append(f"mode {mode}: max/median condition {ratio:.3g}")
    return report
