"""
Unit tests for material parameters, Debye source sets and currents.
"""

import numpy as np
import pytest

from torus_debye.calculus import ModalScalar, ModalTangentField, harmonic_basis, surface_calculus
from torus_debye.debye import (
    ClutchingMap,
    DebyeSourceSet,
    MaterialParams,
    ParameterError,
    dielectric_currents,
    material_params,
    pec_currents,
    surface_currents,
)
from torus_debye.geometry import SurfaceGrid


def _smooth(grid: SurfaceGrid, mode: int, shift: float = 0.0) -> ModalScalar:
    t = grid.t
    return ModalScalar.of(mode, np.cos(t + shift) + 0.5j * np.sin(2 * t) + 0.2 * np.cos(3 * t))


class TestMaterialParams:
    """Tests for MaterialParams."""

    def test_wavenumbers(self, params: MaterialParams) -> None:
        """k_l = ω√(ε_l μ_l)."""
        assert params.k0.value == pytest.approx(np.sqrt(0.90 * 1.10))
        assert params.k1.value == pytest.approx(np.sqrt(1.30 * 0.83))

    def test_static(self) -> None:
        """ω = 0 gives zero wavenumbers."""
        static = material_params(0.9, 1.1, 1.3, 0.83, omega=0.0)
        assert static.is_static
        assert static.k0.value == 0
        assert static.k1.value == 0

    def test_ratios(self, params: MaterialParams) -> None:
        """Current scalings are √(ε₁/ε₀) and √(μ₁/μ₀)."""
        scale_e, scale_m = params.ratios()
        assert scale_e == pytest.approx(np.sqrt(1.30 / 0.90))
        assert scale_m == pytest.approx(np.sqrt(0.83 / 1.10))

    def test_default_materials_are_admissible(self, params: MaterialParams) -> None:
        """The default constants pass validation."""
        params.validate()

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"omega": -1.0},
            {"eps0": 0.0},
            {"mu0": 0.0},
            {"eps1": 1.0 - 0.5j},
            {"mu0": -1.1},
        ],
    )
    def test_invalid_parameters(self, kwargs: dict) -> None:
        """Sign conditions are enforced."""
        values = {"eps0": 0.9, "mu0": 1.1, "eps1": 1.3, "mu1": 0.83, "omega": 1.0}
        values.update(kwargs)
        with pytest.raises(ParameterError):
            material_params(**values)

    def test_non_strict_allows_invalid(self) -> None:
        """strict=False only warns."""
        params = material_params(0.9, -1.1, 1.3, 0.83, omega=1.0, strict=False)
        assert params.mu0 == -1.1

    def test_conductivity(self) -> None:
        """ε = ε̃ + iσ/ω."""
        params = MaterialParams.from_conductivity(0.9, 1.1, 1.3, 0.83, omega=2.0, sigma0=1.0)
        assert params.eps0 == pytest.approx(0.9 + 0.5j)

    def test_conductivity_at_zero_frequency(self) -> None:
        """Conductivities need a positive frequency."""
        with pytest.raises(ParameterError):
            MaterialParams.from_conductivity(0.9, 1.1, 1.3, 0.83, omega=0.0, sigma1=1.0)


class TestClutchingMap:
    """Tests for ClutchingMap."""

    @pytest.mark.parametrize("tc", [0.0, 0.4, np.pi / 2, 2.9])
    def test_rotation(self, tc: float) -> None:
        """U on harmonic coefficients is orthogonal with determinant one."""
        matrix = ClutchingMap(tc).matrix
        np.testing.assert_allclose(matrix @ matrix.T, np.eye(2), atol=1e-15)
        assert np.linalg.det(matrix) == pytest.approx(1.0)

    def test_quarter_turn_is_star(self) -> None:
        """At t_c = π/2, U maps ψ_τ to ψ_θ."""
        rotated = ClutchingMap(np.pi / 2).apply_harmonic(np.array([1.0, 0.0]))
        np.testing.assert_allclose(rotated, [0.0, 1.0], atol=1e-15)

    def test_apply_rotates_complement(self, small_grid: SurfaceGrid) -> None:
        """Away from the harmonic part U acts as ⋆₂."""
        n = small_grid.n_nodes
        field = ModalTangentField.of(2, np.ones(n), np.zeros(n))
        rotated = ClutchingMap(0.7).apply(field, None)
        np.testing.assert_allclose(rotated.tau, 0.0)
        np.testing.assert_allclose(rotated.theta, 1.0)

    def test_apply_requires_basis(self, small_grid: SurfaceGrid) -> None:
        """Harmonic coefficients need the basis matrix."""
        field = ModalTangentField.zeros(0, small_grid.n_nodes)
        with pytest.raises(ValueError):
            ClutchingMap(0.3).apply(field, np.array([1.0, 0.0]))


class TestDebyeSourceSet:
    """Tests for DebyeSourceSet."""

    def test_zeros(self) -> None:
        """Zero sets carry harmonic coefficients only at mode 0."""
        assert DebyeSourceSet.zeros(0, 16).a_j is not None
        assert DebyeSourceSet.zeros(2, 16).a_j is None
        assert DebyeSourceSet.zeros(0, 16).norm() == 0.0
        assert not DebyeSourceSet.zeros(1, 16, dielectric=False).is_dielectric

    def test_harmonic_only_at_mode_zero(self) -> None:
        """Harmonic coefficients at n ≠ 0 are rejected."""
        zero = ModalScalar.zeros(1, 16)
        with pytest.raises(ValueError):
            DebyeSourceSet(1, zero, zero, a_j=np.zeros(2, dtype=complex))

    def test_mode_mismatch(self) -> None:
        """All scalars share the set's mode."""
        with pytest.raises(ValueError):
            DebyeSourceSet(1, ModalScalar.zeros(1, 16), ModalScalar.zeros(2, 16))

    def test_conjugate(self, small_grid: SurfaceGrid) -> None:
        """Conjugation negates the mode."""
        r = _smooth(small_grid, 3)
        src = DebyeSourceSet.pec(r, r)
        conj = src.conjugate()
        assert conj.mode == -3
        np.testing.assert_allclose(conj.r.values, np.conj(r.values))

    def test_pec_aliases(self, small_grid: SurfaceGrid) -> None:
        """r and q alias the exterior sources."""
        r = _smooth(small_grid, 1)
        q = _smooth(small_grid, 1, shift=0.3)
        src = DebyeSourceSet.pec(r, q)
        assert src.r is r
        assert src.q is q
        assert set(src.scalars()) == {"r1", "q1"}


class TestCurrents:
    """Tests for the currents generated by Debye sources."""

    @pytest.mark.parametrize("mode", [1, 2])
    def test_divergence_condition(self, small_grid: SurfaceGrid, mode: int) -> None:
        """d*Γj = ikr and d*Γm = ikq away from mode 0."""
        k = 0.8 + 0.1j
        r = _smooth(small_grid, mode)
        q = _smooth(small_grid, mode, shift=1.0)
        potential = _smooth(small_grid, mode, shift=2.0)
        j, m = surface_currents(small_grid, k, r, q, potential_j=potential)
        calc = surface_calculus(small_grid, mode)
        np.testing.assert_allclose(calc.div @ j.stacked(), 1j * k * r.values, atol=1e-9)
        np.testing.assert_allclose(calc.div @ m.stacked(), 1j * k * q.values, atol=1e-9)

    def test_harmonic_coefficients_rejected_away_from_zero(self, small_grid: SurfaceGrid) -> None:
        """Harmonic parts exist only at mode 0."""
        r = _smooth(small_grid, 1)
        with pytest.raises(ValueError):
            surface_currents(small_grid, 1.0, r, r, a_j=np.array([1.0, 0.0]))

    def test_pec_m_is_rotated_j(self, small_grid: SurfaceGrid) -> None:
        """m = ⋆₂j for the perfect conductor."""
        src = DebyeSourceSet.pec(_smooth(small_grid, 0), _smooth(small_grid, 0, shift=0.5))
        src = DebyeSourceSet.pec(src.r, src.q, np.array([1.0, -0.5j]))
        j, m = pec_currents(src, 1.0, small_grid)
        np.testing.assert_allclose(m.tau, -j.theta)
        np.testing.assert_allclose(m.theta, j.tau)

    def test_pec_harmonic_part(self, small_grid: SurfaceGrid) -> None:
        """Zero scalar sources leave exactly the harmonic field."""
        a = np.array([0.3, 1.0 + 0.2j])
        src = DebyeSourceSet.pec(ModalScalar.zeros(0, 48), ModalScalar.zeros(0, 48), a)
        j, _ = pec_currents(src, 1.0, small_grid)
        np.testing.assert_allclose(j.stacked(), harmonic_basis(small_grid).matrix() @ a)

    def test_dielectric_interior_divergence(
        self, small_grid: SurfaceGrid, params: MaterialParams
    ) -> None:
        """Interior currents satisfy d*Γj₀ = ik₀r₀ and d*Γm₀ = ik₀q₀."""
        mode = 1
        src = DebyeSourceSet(
            mode,
            r1=_smooth(small_grid, mode),
            q1=_smooth(small_grid, mode, shift=0.4),
            r0=_smooth(small_grid, mode, shift=0.8),
            q0=_smooth(small_grid, mode, shift=1.2),
        )
        _, _, j0, m0 = dielectric_currents(src, params, ClutchingMap(0.0), small_grid)
        calc = surface_calculus(small_grid, mode)
        k0 = params.k0.value
        np.testing.assert_allclose(calc.div @ j0.stacked(), 1j * k0 * src.r0.values, atol=1e-8)
        np.testing.assert_allclose(calc.div @ m0.stacked(), 1j * k0 * src.q0.values, atol=1e-8)

    def test_dielectric_needs_interior_sources(
        self, small_grid: SurfaceGrid, params: MaterialParams
    ) -> None:
        """PEC-style sets are rejected."""
        src = DebyeSourceSet.zeros(1, small_grid.n_nodes, dielectric=False)
        with pytest.raises(ValueError):
            dielectric_currents(src, params, ClutchingMap(0.0), small_grid)
