"""
Unit tests for modal fields and the surface calculus.
"""

import numpy as np
import pytest

from torus_debye.calculus import (
    MeanZeroError,
    ModalScalar,
    ModalTangentField,
    d_gamma,
    differentiation_matrix,
    dstar_gamma,
    harmonic_basis,
    laplace_beltrami,
    r0_apply,
    spectral_derivative,
    spectral_upsample,
    star2,
    surface_calculus,
)
from torus_debye.geometry import GeneratingCurve, SurfaceGrid, build_surface_grid


@pytest.fixture(scope="module")
def grid(circular_curve: GeneratingCurve) -> SurfaceGrid:
    """Circular torus at N = 32."""
    return build_surface_grid(circular_curve, 32)


def _profile(grid: SurfaceGrid, mode: int) -> ModalScalar:
    values = np.cos(2 * grid.t) + 0.5j * np.sin(3 * grid.t) + 0.3 * np.cos(grid.t)
    f = ModalScalar.of(mode, values)
    if mode == 0:
        f = ModalScalar(0, f.values - surface_calculus(grid, 0).mean(f.values))
    return f


class TestModalFields:
    """Tests for ModalScalar and ModalTangentField."""

    def test_mode_mismatch(self) -> None:
        """Fields of different modes cannot be combined."""
        with pytest.raises(ValueError, match="modes"):
            ModalScalar.zeros(0, 4) + ModalScalar.zeros(1, 4)

    def test_stacked_round_trip(self) -> None:
        """from_stacked inverts stacked."""
        v = ModalTangentField.of(2, [1, 2, 3], [4, 5, 6])
        w = ModalTangentField.from_stacked(2, v.stacked())
        np.testing.assert_array_equal(w.tau, v.tau)
        np.testing.assert_array_equal(w.theta, v.theta)

    def test_star_rotates(self) -> None:
        """⋆₂ maps (v_τ, v_θ) to (−v_θ, v_τ) and squares to −1."""
        v = ModalTangentField.of(0, [1.0], [2.0])
        rotated = star2(v)
        assert rotated.tau[0] == -2.0
        assert rotated.theta[0] == 1.0
        twice = star2(rotated)
        np.testing.assert_array_equal(twice.stacked(), -v.stacked())

    def test_pointwise_norm(self) -> None:
        """The frame is orthonormal, so |v|² = |v_τ|² + |v_θ|²."""
        v = ModalTangentField.of(1, [3.0], [4.0j])
        assert v.pointwise_norm()[0] == pytest.approx(5.0)


class TestSpectral:
    """Tests for Fourier differentiation and resampling."""

    def test_differentiation_matrix(self) -> None:
        """d/dt sin 3t = 3 cos 3t on the grid."""
        n = 24
        t = 2 * np.pi * np.arange(n) / n
        np.testing.assert_allclose(
            differentiation_matrix(n) @ np.sin(3 * t), 3 * np.cos(3 * t), atol=1e-12
        )

    def test_fft_derivative_agrees(self) -> None:
        """FFT and matrix derivatives agree."""
        n = 20
        t = 2 * np.pi * np.arange(n) / n
        f = np.exp(np.cos(t))
        np.testing.assert_allclose(
            spectral_derivative(f), differentiation_matrix(n) @ f, atol=1e-12
        )

    def test_upsample_keeps_nodes(self) -> None:
        """Upsampled values agree with the input at the coarse nodes."""
        n = 16
        t = 2 * np.pi * np.arange(n) / n
        f = np.cos(t) + 1j * np.sin(2 * t)
        fine = spectral_upsample(f, 3)
        assert fine.size == 48
        np.testing.assert_allclose(fine[::3], f, atol=1e-13)

    def test_upsample_interpolates(self) -> None:
        """Band-limited data is reproduced between the nodes."""
        n = 16
        t = 2 * np.pi * np.arange(n) / n
        fine_t = 2 * np.pi * np.arange(4 * n) / (4 * n)
        fine = spectral_upsample(np.cos(5 * t), 4)
        np.testing.assert_allclose(fine, np.cos(5 * fine_t), atol=1e-13)


class TestSurfaceCalculus:
    """Tests for the modal surface operators."""

    @pytest.mark.parametrize("mode", [0, 1, 2])
    def test_laplacian_inverts_r0(self, grid: SurfaceGrid, mode: int) -> None:
        """Δ_Γ R₀ f = f for admissible data."""
        f = _profile(grid, mode)
        u = r0_apply(f, grid)
        np.testing.assert_allclose(laplace_beltrami(u, grid).values, f.values, atol=1e-9)

    def test_r0_output_mean_zero(self, grid: SurfaceGrid) -> None:
        """Mode-0 R₀ returns a mean-zero profile."""
        u = r0_apply(_profile(grid, 0), grid)
        assert abs(surface_calculus(grid, 0).mean(u.values)) < 1e-12

    def test_r0_rejects_mean(self, grid: SurfaceGrid) -> None:
        """Mode-0 data with nonzero mean raises MeanZeroError."""
        with pytest.raises(MeanZeroError):
            r0_apply(ModalScalar.of(0, np.ones(grid.n_nodes)), grid)

    def test_r0_unchecked_mean_leaves_constant(self, grid: SurfaceGrid) -> None:
        """Unchecked mode-0 data with a mean: J(f − Δu) is a constant."""
        f = ModalScalar.of(0, 1.0 + np.cos(grid.t))
        u = r0_apply(f, grid, check=False)
        defect = grid.jacobian * (f.values - laplace_beltrami(u, grid).values)
        assert abs(defect[0]) > 1e-3
        np.testing.assert_allclose(defect, defect[0], atol=1e-10)

    def test_r0_nonzero_mode_accepts_constants(self, grid: SurfaceGrid) -> None:
        """Away from mode 0 constants are admissible."""
        u = r0_apply(ModalScalar.of(1, np.ones(grid.n_nodes)), grid)
        assert np.all(np.isfinite(u.values))

    @pytest.mark.parametrize("mode", [0, 3])
    def test_curl_of_gradient_vanishes(self, grid: SurfaceGrid, mode: int) -> None:
        """curl dΓ f = 0."""
        calc = surface_calculus(grid, mode)
        f = _profile(grid, mode)
        assert np.max(np.abs(calc.curl @ (calc.grad @ f.values))) < 1e-11

    @pytest.mark.parametrize("mode", [0, 2])
    def test_curl_star_is_div(self, grid: SurfaceGrid, mode: int) -> None:
        """curl ⋆₂ v = div v."""
        calc = surface_calculus(grid, mode)
        v = d_gamma(_profile(grid, mode), grid) + star2(d_gamma(_profile(grid, mode), grid))
        np.testing.assert_allclose(
            calc.curl @ (calc.star @ v.stacked()), dstar_gamma(v, grid).values, atol=1e-11
        )

    def test_harmonic_forms_closed_and_coclosed(self, grid: SurfaceGrid) -> None:
        """ψ_τ and ψ_θ have zero divergence and zero curl."""
        calc = surface_calculus(grid, 0)
        basis = harmonic_basis(grid).matrix()
        assert np.max(np.abs(calc.div @ basis)) < 1e-12
        assert np.max(np.abs(calc.curl @ basis)) < 1e-12

    def test_harmonic_star_relation(self, grid: SurfaceGrid) -> None:
        """⋆₂ψ_τ = ψ_θ."""
        basis = harmonic_basis(grid)
        np.testing.assert_allclose(star2(basis.psi_tau).stacked(), basis.psi_theta.stacked())

    def test_cached_per_mode(self, grid: SurfaceGrid) -> None:
        """Operator sets are shared per (grid, mode)."""
        assert surface_calculus(grid, 1) is surface_calculus(grid, 1)
        assert surface_calculus(grid, 1) is not surface_calculus(grid, 2)
