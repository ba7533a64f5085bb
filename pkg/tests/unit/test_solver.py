"""
Unit tests for assembly and solution of the modal systems.
"""

import numpy as np
import pytest

from torus_debye.calculus import ModalScalar, ModalTangentField, nyquist_vector, surface_calculus
from torus_debye.debye import ClutchingMap, MaterialParams, ParameterError
from torus_debye.operators import assemble_operators
from torus_debye.solver import (
    MEAN_PAIRS,
    NYQUIST_PAIRS,
    BoundaryData,
    ConditioningError,
    ModalSystem,
    PecBoundaryData,
    SolverContext,
    SystemKind,
    assemble_dielectric,
    assemble_pec,
    block_selector,
    check_guards,
    condition_number,
    identity_coefficients,
    solve,
)


def _tangent_data(context: SolverContext, mode: int) -> BoundaryData:
    t = context.grid.t
    j_in = ModalTangentField.of(mode, np.cos(t) + 0.3j * np.sin(2 * t), 0.5 * np.sin(t))
    m_in = ModalTangentField.of(mode, 0.2 * np.cos(3 * t), np.cos(t) - 0.1j)
    return BoundaryData.from_tangential(context.grid, j_in, m_in, omega=1.0)


def _reflected_data(context: SolverContext, mode: int) -> BoundaryData:
    # At −n the data is the mirror image of the +n data under φ ↦ −φ.
    t = context.grid.t
    sign = 1 if mode > 0 else -1
    j_in = ModalTangentField.of(mode, np.cos(t) + 0.3j * np.sin(2 * t), sign * 0.5 * np.sin(t))
    zero = ModalTangentField.zeros(mode, context.grid.n_nodes)
    return BoundaryData.from_tangential(context.grid, j_in, zero, omega=1.0)


def _fourier_columns(t: np.ndarray, frequencies: list[int]) -> np.ndarray:
    return np.exp(1j * np.outer(t, frequencies)) / np.sqrt(t.size)


def _toy_system(matrix: np.ndarray, rhs: np.ndarray) -> ModalSystem:
    return ModalSystem(
        kind=SystemKind.PEC,
        mode=1,
        layout=[("r", 2), ("q", 2)],
        rows=[("t", 2), ("n", 2)],
        matrix=matrix.astype(complex),
        rhs=rhs.astype(complex),
    )


class TestGuards:
    """Tests for the dielectric parameter guards."""

    def test_defaults_pass(self, params: MaterialParams) -> None:
        """The default constants are admissible."""
        check_guards(params)

    def test_opposite_permeabilities(self) -> None:
        """μ₀ + μ₁ = 0 is rejected."""
        params = MaterialParams(eps0=1.3, mu0=-0.83, eps1=1.3, mu1=0.83, omega=1.0)
        with pytest.raises(ParameterError):
            check_guards(params)

    def test_zero_permittivity(self) -> None:
        """A vanishing permittivity is rejected."""
        params = MaterialParams(eps0=0.0, mu0=1.1, eps1=1.3, mu1=0.83, omega=1.0)
        with pytest.raises(ParameterError):
            check_guards(params)

    def test_identity_coefficients_nonzero(self, params: MaterialParams) -> None:
        """Every scalar block has a nonzero leading coefficient."""
        coefficients = identity_coefficients(params)
        assert len(coefficients) == 8
        assert all(abs(c) > 0 for c in coefficients.values())

    def test_mean_pairs_cover_scalar_blocks(self) -> None:
        """Each row is tied to a distinct scalar block."""
        assert sorted(MEAN_PAIRS.values()) == ["q0", "q1", "r0", "r1"]

    def test_nyquist_pairs_on_tangential_rows(self) -> None:
        """Only the curl rows pin a Nyquist component, one per exterior source."""
        assert NYQUIST_PAIRS == {"t_xi": "r1", "t_eta": "q1"}


class TestModalSystem:
    """Tests for ModalSystem and solve on hand-built systems."""

    def test_block_slices(self) -> None:
        """Column and row slices follow the layout order."""
        system = _toy_system(np.eye(4), np.ones(4))
        assert system.block_slice("q") == slice(2, 4)
        assert system.row_slice("t") == slice(0, 2)
        with pytest.raises(KeyError):
            system.block_slice("a")

    def test_block_selector(self) -> None:
        """The selector picks one unknown block."""
        selector = block_selector([("r", 2), ("q", 3)], "q")
        x = np.arange(5, dtype=complex)
        np.testing.assert_allclose(selector @ x, [2, 3, 4])

    def test_solve_identity(self) -> None:
        """Identity systems return the right-hand side as sources."""
        rhs = np.array([1.0, 2.0, 3.0, 4.0])
        system = _toy_system(np.eye(4), rhs)
        sources = solve(system)
        np.testing.assert_allclose(sources.r.values, [1, 2])
        np.testing.assert_allclose(sources.q.values, [3, 4])
        assert system.residual_norm == pytest.approx(0.0, abs=1e-15)
        assert condition_number(system) == pytest.approx(1.0)

    def test_singular_system(self) -> None:
        """Singular matrices raise ConditioningError with the condition number."""
        matrix = np.eye(4)
        matrix[3, 3] = 0.0
        with pytest.raises(ConditioningError) as excinfo:
            solve(_toy_system(matrix, np.ones(4)))
        assert excinfo.value.condition == float("inf")

    def test_ill_conditioned_system(self) -> None:
        """Condition numbers above 1e15 are refused."""
        matrix = np.diag([1.0, 1.0, 1.0, 1e-17])
        with pytest.raises(ConditioningError):
            solve(_toy_system(matrix, np.ones(4)))


class TestDielectric:
    """Tests for assemble_dielectric."""

    def test_mode_mismatch(self, params: MaterialParams, context: SolverContext) -> None:
        """Data of another mode is rejected."""
        data = BoundaryData.zeros(2, context.grid.n_nodes)
        with pytest.raises(ValueError):
            assemble_dielectric(1, params, ClutchingMap(0.0), data, context)

    @pytest.mark.parametrize("mode", [0, 1])
    def test_zero_data(self, params: MaterialParams, context: SolverContext, mode: int) -> None:
        """Homogeneous data gives zero sources."""
        n = context.grid.n_nodes
        data = BoundaryData.zeros(mode, n)
        system = assemble_dielectric(mode, params, ClutchingMap(0.0), data, context)
        assert system.size == 4 * n + (4 if mode == 0 else 0)
        assert system.matrix.shape == (system.size, system.size)
        sources = solve(system)
        assert sources.norm() == 0.0
        assert sources.is_dielectric

    def test_solve_residual(self, params: MaterialParams, context: SolverContext) -> None:
        """Dense solves leave a small relative residual."""
        data = _tangent_data(context, 1)
        system = assemble_dielectric(1, params, ClutchingMap(0.0), data, context)
        solve(system)
        assert system.residual_norm is not None
        assert system.residual_norm < 1e-10

    def test_well_conditioned(self, params: MaterialParams, context: SolverContext) -> None:
        """The second-kind system is well conditioned on a coarse grid."""
        data = BoundaryData.zeros(1, context.grid.n_nodes)
        system = assemble_dielectric(1, params, ClutchingMap(0.0), data, context)
        assert condition_number(system) < 1e6

    @pytest.mark.parametrize("omega", [1.0, 1e-4])
    def test_mode_zero_well_conditioned(self, context: SolverContext, omega: float) -> None:
        """The mode-0 system stays invertible down to low frequency."""
        params = MaterialParams(eps0=0.90, mu0=1.10, eps1=1.30, mu1=0.83, omega=omega)
        data = BoundaryData.zeros(0, context.grid.n_nodes)
        system = assemble_dielectric(0, params, ClutchingMap(0.0), data, context)
        assert condition_number(system) < 1e6

    def test_mode_zero_solution_pinned(
        self, params: MaterialParams, context: SolverContext
    ) -> None:
        """Consistent data leaves zero Nyquist and mean components in the pinned blocks."""
        n = context.grid.n_nodes
        system = assemble_dielectric(
            0, params, ClutchingMap(0.0), _tangent_data(context, 0), context
        )
        solve(system)
        assert system.solution is not None
        alternating = nyquist_vector(n)
        for unknown in NYQUIST_PAIRS.values():
            values = system.solution[system.block_slice(unknown)]
            assert abs(alternating @ values) <= 1e-8 * np.sqrt(n) * np.linalg.norm(values)
        r0 = system.solution[system.block_slice("r0")]
        weights = context.grid.jacobian / np.sum(context.grid.jacobian)
        assert abs(weights @ r0) <= 1e-8 * np.max(np.abs(r0))

    def test_mirror_modes(self, params: MaterialParams, context: SolverContext) -> None:
        """Mirror-image data at ±n give sources of equal magnitude."""
        plus = solve(
            assemble_dielectric(1, params, ClutchingMap(0.0), _reflected_data(context, 1), context)
        )
        minus = solve(
            assemble_dielectric(
                -1, params, ClutchingMap(0.0), _reflected_data(context, -1), context
            )
        )
        for name in ("r0", "q0", "r1", "q1"):
            a = np.abs(getattr(plus, name).values)
            b = np.abs(getattr(minus, name).values)
            np.testing.assert_allclose(a, b, rtol=0, atol=1e-7 * np.max(a))


class TestPec:
    """Tests for assemble_pec."""

    def test_direct_b_row_needs_frequency(
        self, params: MaterialParams, context: SolverContext
    ) -> None:
        """The direct B-row is refused at ω = 0."""
        static = MaterialParams(params.eps0, params.mu0, params.eps1, params.mu1, omega=0.0)
        data = PecBoundaryData.zeros(0, context.grid.n_nodes)
        with pytest.raises(ParameterError):
            assemble_pec(0, static, data, context, b_row="direct")

    def test_mode_mismatch(self, params: MaterialParams, context: SolverContext) -> None:
        """Data of another mode is rejected."""
        data = PecBoundaryData.zeros(0, context.grid.n_nodes)
        with pytest.raises(ValueError):
            assemble_pec(1, params, data, context)

    @pytest.mark.parametrize("mode", [0, 1])
    def test_zero_data(self, params: MaterialParams, context: SolverContext, mode: int) -> None:
        """Homogeneous data gives zero sources."""
        n = context.grid.n_nodes
        system = assemble_pec(mode, params, PecBoundaryData.zeros(mode, n), context)
        assert system.size == 2 * n + (2 if mode == 0 else 0)
        sources = solve(system)
        assert sources.norm() == 0.0
        assert not sources.is_dielectric

    def test_mode_zero_well_conditioned(
        self, params: MaterialParams, context: SolverContext
    ) -> None:
        """The mode-0 perfect-conductor system is invertible."""
        system = assemble_pec(0, params, PecBoundaryData.zeros(0, context.grid.n_nodes), context)
        assert np.isfinite(condition_number(system))
        assert condition_number(system) < 1e8

    def test_near_static_residual(self, context: SolverContext) -> None:
        """At ω = 1e-8 the difference B-row still gives an accurate solve."""
        params = MaterialParams(eps0=0.90, mu0=1.10, eps1=1.30, mu1=0.83, omega=1e-8)
        n = context.grid.n_nodes
        e = np.zeros((n, 3), dtype=complex)
        e[:, 2] = 1.0
        h = np.zeros((n, 3), dtype=complex)
        h[:, 0] = 0.5
        data = PecBoundaryData.from_fields(context.grid, 0, e, h, disk_flux=0.3)
        system = assemble_pec(0, params, data, context)
        solve(system)
        assert system.residual_norm is not None
        assert system.residual_norm <= 1e-10


class TestBoundaryData:
    """Tests for BoundaryData."""

    def test_static_needs_normal_data(self, context: SolverContext) -> None:
        """At ω = 0, f and h cannot be derived from the tangential jumps."""
        zero = ModalTangentField.zeros(0, context.grid.n_nodes)
        with pytest.raises(ValueError):
            BoundaryData.from_tangential(context.grid, zero, zero, omega=0.0)

    def test_static_with_normal_data(self, context: SolverContext) -> None:
        """Supplied f and h are kept."""
        n = context.grid.n_nodes
        zero = ModalTangentField.zeros(0, n)
        f = ModalScalar.of(0, np.ones(n))
        data = BoundaryData.from_tangential(context.grid, zero, zero, omega=0.0, f=f, h=f)
        assert data.f is f
        mean_f, _ = data.means(context.grid)
        assert mean_f == pytest.approx(1.0)

    def test_derived_normal_data_mean_free(self, context: SolverContext) -> None:
        """f = curlΓ j_in/(iω) has zero surface mean at mode 0."""
        data = _tangent_data(context, 0)
        mean_f, mean_h = data.means(context.grid)
        assert abs(mean_f) < 1e-12
        assert abs(mean_h) < 1e-12

    def test_pec_from_fields(self, context: SolverContext) -> None:
        """The disk flux is dropped away from mode 0."""
        n = context.grid.n_nodes
        e = np.zeros((n, 3), dtype=complex)
        e[:, 2] = 1.0
        data = PecBoundaryData.from_fields(context.grid, 2, e, e, disk_flux=3.0)
        assert data.disk_flux == 0
        np.testing.assert_allclose(data.n_h.values, context.grid.normal[:, 2])


class TestLeadingOrder:
    """Identity parts of the tangential rows on the N = 96 grid."""

    def test_identity_coefficient_from_matrix(
        self, params: MaterialParams, fine_context: SolverContext
    ) -> None:
        """The r₁ block of the t_ξ row acts on high frequencies as −√μ₁/4."""
        data = BoundaryData.zeros(1, fine_context.grid.n_nodes)
        system = assemble_dielectric(1, params, ClutchingMap(0.0), data, fine_context)
        block = system.matrix[system.row_slice("t_xi"), system.block_slice("r1")]
        wave = _fourier_columns(fine_context.grid.t, [16])[:, 0]
        measured = complex(np.vdot(wave, block @ wave))
        expected = identity_coefficients(params)[("t_xi", "r1")]
        assert expected == pytest.approx(-np.sqrt(0.83) / 4)
        assert abs(measured - expected) < 0.1 * abs(expected)

    def test_regularized_laplacian(self, fine_context: SolverContext) -> None:
        """G₀ ΔΓ S is −Id/4 up to a small remainder on the upper band."""
        grid = fine_context.grid
        ops = assemble_operators(1, 1.0, grid, cache=fine_context.cache)
        composite = ops.G0 @ surface_calculus(grid, 1).laplacian @ ops.S
        band = [p for p in range(-grid.n_nodes // 4, grid.n_nodes // 4 + 1) if abs(p) >= 12]
        waves = _fourier_columns(grid.t, band)
        remainder = waves.conj().T @ (composite + np.eye(grid.n_nodes) / 4) @ waves
        assert np.max(np.abs(np.linalg.eigvals(remainder))) <= 0.2
