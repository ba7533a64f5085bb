"""
Self-test suite: invariant checks of every layer collected as report rows.

Checks are registered with `@register_check(module, name, threshold)` and
return one measured value. A check passes when the value is at most the
threshold (or at least it, for checks registered with ``at_least=True``).
A failing or crashing check produces a failed row; the suite never raises.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from torus_debye.calculus import ModalTangentField, harmonic_basis, surface_calculus
from torus_debye.config import ExperimentConfig
from torus_debye.debye import (
    ClutchingMap,
    MaterialParams,
    ParameterError,
    surface_currents,
)
from torus_debye.fields import (
    FieldEvaluator,
    Medium,
    SurfaceSources,
    decay_exponent,
    maxwell_residual,
    radiation_profile,
)
from torus_debye.geometry import SurfaceGrid, build_surface_grid
from torus_debye.harness.common import (
    ProgressCallback,
    build_context,
    build_grid,
    build_params,
    mode_rng,
    new_report,
    progress_or_noop,
    random_density,
    random_surface_sources,
)
from torus_debye.harness.manufactured import build_manufactured_problem, solve_dielectric_cell
from torus_debye.harness.sweeps import dielectric_condition
from torus_debye.kernels import Wavenumber, difference_kernel
from torus_debye.models import ExperimentKind, ExperimentReport
from torus_debye.operators import Side, assemble_operators
from torus_debye.quadrature import alpert_integrate, alpert_rule, azimuthal_modal_integral
from torus_debye.solver import (
    BoundaryData,
    PecBoundaryData,
    SolverContext,
    assemble_dielectric,
    assemble_pec,
    check_guards,
    solve,
)

logger = logging.getLogger(__name__)

FOUR_PI = 4 * np.pi


class SelftestRun:
    """Shared state for one self-test run: grid, cache and random data."""

    def __init__(self, config: ExperimentConfig) -> None:
        self.config = config
        self.seed = config.manufactured.seed

    @cached_property
    def grid(self) -> SurfaceGrid:
        """Surface under test."""
        return build_grid(self.config)

    @cached_property
    def context(self) -> SolverContext:
        """Cycles and kernel cache."""
        return build_context(self.config, self.grid)

    @cached_property
    def evaluator(self) -> FieldEvaluator:
        """Field evaluator on the surface."""
        return FieldEvaluator(self.grid, self.config.quadrature)

    def sources(self, k: complex, mode: int = 0, offset: int = 0) -> SurfaceSources:
        """Random consistent sources on Γ."""
        rng = mode_rng(self.seed + offset, mode)
        return random_surface_sources(
            rng, self.grid, mode, Wavenumber(k), self.config.manufactured.band_limit
        )

    def exterior_point(self, distance: float) -> np.ndarray:
        """Point in Ω at about `distance` beyond the outermost node, azimuth 0.4."""
        rho = float(np.max(self.grid.rho)) + distance
        z = float(self.grid.z[int(np.argmax(self.grid.rho))])
        return np.array([rho * np.cos(0.4), rho * np.sin(0.4), z])


CheckFunction = Callable[[SelftestRun], float]


@dataclass(frozen=True)
class RegisteredCheck:
    """A named invariant check."""

    module: str
    name: str
    threshold: float
    at_least: bool
    function: CheckFunction

    def passes(self, measured: float) -> bool:
        """Compare a measurement with the threshold."""
        if math.isnan(measured):
            return False
        return measured >= self.threshold if self.at_least else measured <= self.threshold


_CHECKS: list[RegisteredCheck] = []


def register_check(
    module: str, name: str, threshold: float, at_least: bool = False
) -> Callable[[CheckFunction], CheckFunction]:
    """
    Decorator to register a self-test check.

    Args:
        module: Layer the check belongs to.
        name: Check identifier.
        threshold: Pass threshold for the measured value.
        at_least: Pass when the value is at least the threshold.

    Returns:
        Decorator function.
    """

    def decorator(function: CheckFunction) -> CheckFunction:
        _CHECKS.append(RegisteredCheck(module, name, threshold, at_least, function))
        return function

    return decorator


def registered_checks() -> list[RegisteredCheck]:
    """All checks in registration order."""
    return list(_CHECKS)


# geometry


@register_check("geometry", "outward-normal", 0.0)
def _outward_normal(run: SelftestRun) -> float:
    grid = run.grid
    step = 0.05 * grid.curve.tube_diameter
    wrong = 0
    for position, normal in zip(grid.positions, grid.normal):
        outside = position + step * normal
        if grid.curve.contains(float(outside[0]), float(outside[2])):
            wrong += 1
    return wrong / grid.n_nodes


@register_check("geometry", "disk-area", 1e-12)
def _disk_area(run: SelftestRun) -> float:
    disk = run.context.cycles.disk
    exact = np.pi * disk.radius**2
    return abs(disk.area - exact) / exact


@register_check("geometry", "frame-orthonormal", 1e-13)
def _frame_orthonormal(run: SelftestRun) -> float:
    grid = run.grid
    frame = np.stack([grid.tangent, grid.azimuthal, grid.normal], axis=1)
    gram = np.einsum("nij,nkj->nik", frame, frame)
    return float(np.max(np.abs(gram - np.eye(3))))


@register_check("geometry", "area-spectral-convergence", 1e-12)
def _area_convergence(run: SelftestRun) -> float:
    finer = build_surface_grid(run.grid.curve, 2 * run.grid.n_nodes).surface_area()
    return abs(run.grid.surface_area() - finer) / finer


# quadrature


def _log_kernel(t0: float) -> Callable[[np.ndarray], np.ndarray]:
    def kernel(s: np.ndarray) -> np.ndarray:
        return np.log(4 * np.sin((s - t0) / 2) ** 2)

    return kernel


@register_check("quadrature", "alpert-log-moment", 1e-9)
def _alpert_log(run: SelftestRun) -> float:
    n = run.grid.n_nodes
    rule = alpert_rule(run.config.quadrature.order)
    t = 2 * np.pi * np.arange(n) / n
    worst = 0.0
    for index in (0, n // 3):
        # ∫ log(4 sin²((t − t₀)/2)) cos t dt = −2π cos t₀
        value = alpert_integrate(np.cos(t), index, rule, _log_kernel(t[index]))
        worst = max(worst, abs(value + 2 * np.pi * np.cos(t[index])))
    return worst


@register_check("quadrature", "alpert-order-8-rate", 7.0, at_least=True)
def _alpert_rate(run: SelftestRun) -> float:
    del run

    def integral(order: int, n: int) -> complex:
        t = 2 * np.pi * np.arange(n) / n
        return alpert_integrate(np.exp(np.sin(t)), 0, alpert_rule(order), _log_kernel(0.0))

    reference = integral(16, 800)
    coarse = abs(integral(8, 48) - reference)
    fine = abs(integral(8, 96) - reference)
    return float(np.log2(coarse / fine))


@register_check("quadrature", "azimuthal-conjugate-symmetry", 1e-12)
def _azimuthal_conjugate(run: SelftestRun) -> float:
    del run

    def kernel(phi: np.ndarray) -> np.ndarray:
        return np.exp(np.cos(phi) + 0.3 * np.sin(phi)) / (1.2 - np.cos(phi))

    worst = 0.0
    for mode in (1, 3):
        plus = azimuthal_modal_integral(kernel, mode).value
        minus = azimuthal_modal_integral(kernel, -mode).value
        worst = max(worst, abs(minus - np.conj(plus)) / abs(plus))
    return worst


# surface calculus


@register_check("surface_calc", "laplacian-inverse", 1e-10)
def _laplacian_inverse(run: SelftestRun) -> float:
    worst = 0.0
    for mode in (0, 1, 3):
        rng = mode_rng(run.seed, mode)
        f = random_density(rng, run.grid, mode, run.config.manufactured.band_limit)
        calc = surface_calculus(run.grid, mode)
        back = calc.laplacian @ calc.r0_solve(f.values)
        worst = max(worst, float(np.max(np.abs(back - f.values)) / np.max(np.abs(f.values))))
    return worst


@register_check("surface_calc", "harmonic-closed", 1e-10)
def _harmonic_closed(run: SelftestRun) -> float:
    calc = surface_calculus(run.grid, 0)
    basis = harmonic_basis(run.grid).matrix()
    scale = float(np.max(np.abs(basis)))
    return float(max(np.max(np.abs(calc.div @ basis)), np.max(np.abs(calc.curl @ basis)))) / scale


@register_check("surface_calc", "period-matrix-condition", 100.0)
def _period_matrix(run: SelftestRun) -> float:
    n = run.grid.n_nodes
    cycles = run.context.cycles
    basis = harmonic_basis(run.grid).matrix()
    periods = np.vstack([cycles.a_functional(n) @ basis, cycles.b_functional(n) @ basis])
    return float(np.linalg.cond(periods))


# kernels


@register_check("kernels", "single-layer-symmetry", 1e-8)
def _single_layer_symmetry(run: SelftestRun) -> float:
    grid = run.grid
    s = assemble_operators(2, 1.0, grid, cache=run.context.cache).S
    weights = grid.jacobian * grid.h
    f = np.cos(grid.t) + 0.5
    g = np.sin(2 * grid.t) + 1.0
    left = np.dot(weights * f, s @ g)
    right = np.dot(weights * g, s @ f)
    return float(abs(left - right) / abs(left))


@register_check("kernels", "regularized-laplacian", 0.2)
def _regularized_laplacian(run: SelftestRun) -> float:
    # G₀ ΔΓ S_k is −Id/4 plus a compact remainder; measured on the upper band.
    grid = run.grid
    n = grid.n_nodes
    k = build_params(run.config, 1.0).k1
    ops = assemble_operators(1, k, grid, cache=run.context.cache)
    composite = ops.G0 @ surface_calculus(grid, 1).laplacian @ ops.S
    band = [p for p in range(-n // 4, n // 4 + 1) if abs(p) >= n // 8]
    waves = np.exp(1j * np.outer(grid.t, band)) / np.sqrt(n)
    remainder = waves.conj().T @ (composite + np.eye(n) / 4) @ waves
    return float(np.max(np.abs(np.linalg.eigvals(remainder))))


@register_check("kernels", "difference-kernel", 1e-12)
def _difference_kernel(run: SelftestRun) -> float:
    del run
    k = 1e-3
    r = np.linspace(0.05, 6.0, 200)
    reference = np.expm1(1j * k * r) / (FOUR_PI * r * k)
    return float(np.max(np.abs(difference_kernel(r, k) - reference) / np.abs(reference)))


@register_check("kernels", "difference-kernel-moderate-k", 1e-13)
def _difference_moderate(run: SelftestRun) -> float:
    del run
    k = 0.8
    r = np.linspace(0.05, 6.0, 200)
    # e^{ix} − 1 = −2 sin²(x/2) + i sin x has no cancellation.
    x = k * r
    reference = (-2 * np.sin(x / 2) ** 2 + 1j * np.sin(x)) / (FOUR_PI * r * k)
    return float(np.max(np.abs(difference_kernel(r, k) - reference) / np.abs(reference)))


@register_check("kernels", "difference-kernel-limit", 1e-12)
def _difference_limit(run: SelftestRun) -> float:
    del run
    r = np.linspace(0.05, 6.0, 50)
    leading = 1j / FOUR_PI
    return float(np.max(np.abs(difference_kernel(r, 1e-14) - leading)) / abs(leading))


# debye


@register_check("debye", "parameter-guards", 0.0)
def _parameter_guards(run: SelftestRun) -> float:
    del run
    misses = 0
    for eps0, mu0 in ((1.3, -0.83), (0.0, 1.1)):
        try:
            check_guards(MaterialParams(eps0=eps0, mu0=mu0, eps1=1.3, mu1=0.83, omega=1.0))
        except ParameterError:
            continue
        misses += 1
    return float(misses)


@register_check("debye", "current-divergence", 1e-10)
def _current_divergence(run: SelftestRun) -> float:
    k = 0.7 + 0.2j
    worst = 0.0
    for mode in (0, 2):
        rng = mode_rng(run.seed, mode)
        band = run.config.manufactured.band_limit
        r = random_density(rng, run.grid, mode, band)
        q = random_density(rng, run.grid, mode, band)
        p = random_density(rng, run.grid, mode, band, mean_zero=False)
        a = np.array([1.0, -0.5]) if mode == 0 else None
        j, m = surface_currents(run.grid, k, r, q, p, p, a, a)
        calc = surface_calculus(run.grid, mode)
        for current, source in ((j, r), (m, q)):
            defect = calc.div @ current.stacked() - 1j * k * source.values
            worst = max(worst, float(np.max(np.abs(defect)) / np.max(np.abs(source.values))))
    return worst


# solver


def _dielectric_zero(run: SelftestRun, omega: float) -> float:
    params = build_params(run.config, omega)
    data = BoundaryData.zeros(0, run.grid.n_nodes)
    system = assemble_dielectric(0, params, ClutchingMap(run.config.sweep.tc), data, run.context)
    return solve(system).norm()


@register_check("solver", "dielectric-zero-data-low", 1e-10)
def _dielectric_zero_low(run: SelftestRun) -> float:
    return _dielectric_zero(run, 1e-4)


@register_check("solver", "dielectric-zero-data", 1e-10)
def _dielectric_zero_unit(run: SelftestRun) -> float:
    return _dielectric_zero(run, 1.0)


def _pec_condition(run: SelftestRun, omega: float) -> float:
    params = build_params(run.config, omega)
    data = PecBoundaryData.zeros(0, run.grid.n_nodes)
    system = assemble_pec(0, params, data, run.context)
    if solve(system).norm() > 0:
        return math.inf
    return system.condition_number()


@register_check("solver", "pec-low-frequency-conditioning", 10.0)
def _pec_low_frequency(run: SelftestRun) -> float:
    return _pec_condition(run, 1e-8) / _pec_condition(run, 1e-2)


@register_check("solver", "pec-near-static-residual", 1e-10)
def _pec_near_static(run: SelftestRun) -> float:
    n = run.grid.n_nodes
    e = np.zeros((n, 3), dtype=complex)
    e[:, 2] = 1.0
    h = np.zeros((n, 3), dtype=complex)
    h[:, 0] = 0.5
    data = PecBoundaryData.from_fields(run.grid, 0, e, h, disk_flux=0.3)
    system = assemble_pec(0, build_params(run.config, 1e-8), data, run.context)
    solve(system)
    return math.inf if system.residual_norm is None else system.residual_norm


@register_check("solver", "clutch-quarter-turn-ratio", 1.0, at_least=True)
def _clutch_ratio(run: SelftestRun) -> float:
    omega = min(run.config.sweep.clutch_omegas)
    quarter, _ = dielectric_condition(run.context, run.config, 0, omega, np.pi / 2)
    base, _ = dielectric_condition(run.context, run.config, 0, omega, 0.0)
    return quarter / base


@register_check("solver", "resonance-max-median", 10.0)
def _resonance(run: SelftestRun) -> float:
    sweep = run.config.sweep
    conditions = []
    for omega in np.linspace(sweep.resonance_min, sweep.resonance_max, 5):
        cond, _ = dielectric_condition(run.context, run.config, 0, float(omega), sweep.tc)
        conditions.append(cond)
        run.context.cache.clear()
    return float(np.max(conditions) / np.median(conditions))


@register_check("solver", "mirror-mode-symmetry", 1e-7)
def _mirror_modes(run: SelftestRun) -> float:
    # Data at −1 is the mirror image of the data at +1 under φ ↦ −φ.
    grid = run.grid
    params = build_params(run.config, 1.0)
    solutions = []
    for mode in (1, -1):
        j_in = ModalTangentField.of(mode, np.cos(grid.t), mode * 0.5 * np.sin(grid.t))
        m_in = ModalTangentField.zeros(mode, grid.n_nodes)
        data = BoundaryData.from_tangential(grid, j_in, m_in, omega=1.0)
        system = assemble_dielectric(mode, params, ClutchingMap(0.0), data, run.context)
        solutions.append(solve(system))
    plus, minus = solutions
    worst = 0.0
    for name in ("r0", "q0", "r1", "q1"):
        a = np.abs(getattr(plus, name).values)
        b = np.abs(getattr(minus, name).values)
        scale = max(float(np.max(a)), np.finfo(float).tiny)
        worst = max(worst, float(np.max(np.abs(a - b))) / scale)
    return worst


# fields


@register_check("fields", "linearity", 1e-12)
def _linearity(run: SelftestRun) -> float:
    a = run.sources(1.0)
    b = run.sources(1.0, offset=1)
    medium = Medium.unit(1.0, Side.EXTERIOR)
    point = run.exterior_point(1.0)
    combined = run.evaluator.evaluate(point, a.scaled(2.0) + b.scaled(-3.0j), medium)
    first = run.evaluator.evaluate(point, a, medium)
    second = run.evaluator.evaluate(point, b, medium)
    expected = 2.0 * first.E - 3.0j * second.E
    return float(np.linalg.norm(combined.E - expected) / np.linalg.norm(expected))


@register_check("fields", "maxwell-residual", 1e-8)
def _maxwell(run: SelftestRun) -> float:
    params = build_params(run.config, 1.0)
    sources = run.sources(params.k1.value)
    return maxwell_residual(
        run.evaluator, run.exterior_point(1.0), sources, Medium.exterior(params)
    )


@register_check("fields", "static-maxwell-residual", 1e-8)
def _maxwell_static(run: SelftestRun) -> float:
    params = build_params(run.config, 0.0)
    sources = run.sources(0.0)
    return maxwell_residual(
        run.evaluator, run.exterior_point(1.0), sources, Medium.exterior(params)
    )


@register_check("fields", "radiation-decay-rate", 1.9, at_least=True)
def _radiation(run: SelftestRun) -> float:
    medium = Medium.unit(1.0, Side.EXTERIOR)
    radii = (20.0, 40.0)
    profile = radiation_profile(run.evaluator, (1.0, 0.3, 0.5), radii, run.sources(1.0), medium)
    return -decay_exponent(radii, profile)


# harness


@register_check("harness", "manufactured-n0-unit-frequency", 1e-6)
def _manufactured(run: SelftestRun) -> float:
    problem = build_manufactured_problem(run.config, run.grid)
    return solve_dielectric_cell(problem, run.config, run.context, 0, 1.0).max_error


def selftest(
    config: ExperimentConfig, progress: ProgressCallback | None = None
) -> ExperimentReport:
    """
    Run every registered check and collect one row per check.

    Args:
        config: Configuration; the grid size sets the cost of the run.
        progress: Optional progress callback.

    Returns:
        Report with columns module, check, measured, threshold, passed.
        Exceptions raised by a check are recorded in `errors`.
    """
    update = progress_or_noop(progress)
    run = SelftestRun(config)
    report = new_report(config, ExperimentKind.SELFTEST, seed=run.seed)
    checks = registered_checks()
    for index, check in enumerate(checks):
        update(index, len(checks), f"{check.module}: {check.name}")
        try:
            measured = float(check.function(run))
        except Exception as e:  # noqa: BLE001
            logger.warning("Check %s/%s raised: %s", check.module, check.name, e)
            report.errors.append(f"{check.module}/{check.name}: {type(e).__name__}: {e}")
            measured = math.nan
        report.add_row(
            module=check.module,
            check=check.name,
            measured=measured,
            threshold=check.threshold,
            passed=check.passes(measured),
        )
    update(len(checks), len(checks), "Done")
    failed = sum(1 for row in report.rows if not row["passed"])
    report.notes.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    return report
