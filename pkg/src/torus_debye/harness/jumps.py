"""
Jump-relation checks: discrete boundary traces against fields evaluated
off the surface and extrapolated to it.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np
from numpy.typing import NDArray

from torus_debye.config import ExperimentConfig
from torus_debye.fields import FieldEvaluator, Medium, NearEvaluationError
from torus_debye.geometry import SurfaceGrid
from torus_debye.harness.common import (
    ProgressCallback,
    build_context,
    build_grid,
    mode_rng,
    new_report,
    progress_or_noop,
    random_surface_sources,
)
from torus_debye.kernels import Wavenumber
from torus_debye.models import ExperimentKind, ExperimentReport
from torus_debye.operators import Side, TraceResult, assemble_operators, traces

logger = logging.getLogger(__name__)

DISTANCES = (1e-2, 5e-3, 2.5e-3)
WAVENUMBERS: tuple[complex, ...] = (0j, 0.5 + 0j, 2.0 + 0.1j)
JUMP_TOLERANCE = 1e-5
TRACE_NAMES = ("t_xi", "t_eta", "n_xi", "n_eta")


def extrapolate_to_zero(
    distances: Sequence[float], values: Sequence[NDArray[np.complex128]]
) -> NDArray[np.complex128]:
    """Value at distance 0 of the polynomial through (d_i, values_i)."""
    d = np.asarray(distances, dtype=float)
    out = np.zeros_like(np.asarray(values[0], dtype=complex))
    for i, v in enumerate(values):
        others = np.delete(d, i)
        out = out + np.asarray(v) * float(np.prod(others / (others - d[i])))
    return out


def _field_traces(
    grid: SurfaceGrid, index: int, e: NDArray[np.complex128], h: NDArray[np.complex128]
) -> dict[str, NDArray[np.complex128]]:
    tangent, azimuthal, normal = grid.tangent[index], grid.azimuthal[index], grid.normal[index]

    def star_tangential(v: NDArray[np.complex128]) -> NDArray[np.complex128]:
        return np.array([-np.dot(v, azimuthal), np.dot(v, tangent)])

    return {
        "t_xi": star_tangential(e),
        "t_eta": star_tangential(h),
        "n_xi": np.array([np.dot(e, normal)]),
        "n_eta": np.array([np.dot(h, normal)]),
    }


def _discrete_at(
    result: TraceResult, name: str, index: int, n_nodes: int
) -> NDArray[np.complex128]:
    values = getattr(result, name)
    if name.startswith("t_"):
        return np.array([values[index], values[n_nodes + index]])
    return np.array([values[index]])


def run_jump_checks(
    config: ExperimentConfig,
    wavenumbers: Sequence[complex] = WAVENUMBERS,
    distances: Sequence[float] = DISTANCES,
    samples: int = 4,
    progress: ProgressCallback | None = None,
) -> ExperimentReport:
    """
    Compare the eight one-sided traces with extrapolated off-surface fields.

    For each wavenumber and mode, random band-limited sources are placed
    on Γ. Their fields (with ε = μ = 1) are evaluated at x ± d n̂ for each
    distance d at `samples` nodes, extrapolated to d = 0 and compared with
    the discrete traces there. Errors are relative to the largest value of
    each discrete trace.

    Args:
        config: Experiment configuration (grid, quadrature, modes, seed).
        wavenumbers: Wavenumbers to test.
        distances: Off-surface distances, at least two.
        samples: Number of equispaced nodes to test at.
        progress: Optional progress callback.

    Returns:
        Report with one row per (k, mode, trace, side).
    """
    if len(distances) < 2:
        raise ValueError("Extrapolation needs at least two distances")
    update = progress_or_noop(progress)
    grid = build_grid(config)
    context = build_context(config, grid)
    evaluator = FieldEvaluator(grid, config.quadrature)
    report = new_report(config, ExperimentKind.JUMP_CHECKS, seed=config.manufactured.seed)
    nodes = np.linspace(0, grid.n_nodes, samples, endpoint=False).astype(int)
    n = grid.n_nodes

    cells = [(complex(k), mode) for k in wavenumbers for mode in config.sweep.modes]
    for step, (k_value, mode) in enumerate(cells):
        update(step, len(cells), f"Jump checks k={k_value:g}, n={mode}")
        k = Wavenumber(k_value)
        sources = random_surface_sources(
            mode_rng(config.manufactured.seed, mode), grid, mode, k, config.manufactured.band_limit
        )
        ops = assemble_operators(mode, k, grid, cache=context.cache)
        discrete = {
            side: traces(sources.r, sources.q, sources.j.stacked(), sources.m.stacked(), ops, side)
            for side in Side
        }
        for side in Side:
            medium = Medium.unit(k, side)
            extrapolated: dict[str, list[NDArray[np.complex128]]] = {
                name: [] for name in TRACE_NAMES
            }
            try:
                for index in nodes:
                    per_distance: dict[str, list[NDArray[np.complex128]]] = {
                        name: [] for name in TRACE_NAMES
                    }
                    for d in distances:
                        point = grid.positions[index] + side.sign * d * grid.normal[index]
                        sample = evaluator.evaluate(point, sources, medium)
                        for name, value in _field_traces(grid, index, sample.E, sample.H).items():
                            per_distance[name].append(value)
                    for name in TRACE_NAMES:
                        extrapolated[name].append(
                            extrapolate_to_zero(distances, per_distance[name])
                        )
            except NearEvaluationError as e:
                report.errors.append(f"k {k_value:g}, mode {mode}, {side.value}: {e}")
                continue

            for name in TRACE_NAMES:
                full = getattr(discrete[side], name)
                scale = max(float(np.max(np.abs(full))), np.finfo(float).tiny)
                exact = np.concatenate([_discrete_at(discrete[side], name, i, n) for i in nodes])
                approx = np.concatenate(extrapolated[name])
                error = float(np.max(np.abs(approx - exact))) / scale
                report.add_row(
                    k=k_value,
                    mode=mode,
                    trace=name,
                    side=side.value,
                    error=error,
                    passed=error <= JUMP_TOLERANCE,
                )
    update(len(cells), len(cells), "Done")
    return report
