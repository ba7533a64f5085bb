"""
Modal surface calculus: dΓ, ⋆₂, d*Γ, Laplace-Beltrami, R₀ and harmonic forms.

With s = |γ'| and J = sρ, a mode-n field satisfies

    grad f = (∂_t f / s) τ̂ + (in f / ρ) θ̂
    div v  = (1/J) ∂_t(ρ v_τ) + (in/ρ) v_θ
    curl v = (1/J) ∂_t(ρ v_θ) − (in/ρ) v_τ          (= n̂·curl, i.e. ⋆₂dΓ)
    Δ f    = div grad f

and ⋆₂ is the rotation τ̂ ↦ θ̂, θ̂ ↦ −τ̂ (that is, n̂ ×). Every operator is a
dense matrix built from the Fourier differentiation matrix, so discrete
identities such as div∘grad = Δ and curl∘⋆₂ = div hold to rounding.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import lu_factor, lu_solve

from torus_debye.calculus.fields import ModalScalar, ModalTangentField
from torus_debye.calculus.spectral import differentiation_matrix
from torus_debye.geometry.grid import SurfaceGrid

logger = logging.getLogger(__name__)

MEAN_ZERO_TOLERANCE = 1e-10


class MeanZeroError(Exception):
    """Mode-0 data passed to R₀ does not have zero surface mean."""


def nyquist_vector(n_nodes: int) -> NDArray[np.float64]:
    """(−1)^i, the grid mode that spectral d/dt annihilates."""
    return (-1.0) ** np.arange(n_nodes)


class SurfaceCalculus:
    """
    Matrices of the surface operators for one grid and one mode.

    Tangent fields are acted on in stacked form [v_τ; v_θ].
    """

    def __init__(self, grid: SurfaceGrid, mode: int) -> None:
        self.grid = grid
        self.mode = mode
        self.n_nodes = grid.n_nodes

    @cached_property
    def derivative(self) -> NDArray[np.float64]:
        """Fourier d/dt."""
        return differentiation_matrix(self.n_nodes)

    @cached_property
    def grad(self) -> NDArray[np.complex128]:
        """(2N × N) surface gradient."""
        g = self.grid
        return np.vstack(
            [self.derivative / g.speed[:, None], np.diag(1j * self.mode / g.rho)]
        ).astype(complex)

    @cached_property
    def div(self) -> NDArray[np.complex128]:
        """(N × 2N) surface divergence."""
        g = self.grid
        tau_part = (self.derivative * g.rho[None, :]) / g.jacobian[:, None]
        return np.hstack([tau_part, np.diag(1j * self.mode / g.rho)]).astype(complex)

    @cached_property
    def curl(self) -> NDArray[np.complex128]:
        """(N × 2N) surface curl n̂·curl."""
        g = self.grid
        theta_part = (self.derivative * g.rho[None, :]) / g.jacobian[:, None]
        return np.hstack([np.diag(-1j * self.mode / g.rho), theta_part]).astype(complex)

    @cached_property
    def star(self) -> NDArray[np.float64]:
        """(2N × 2N) rotation ⋆₂."""
        n = self.n_nodes
        eye = np.eye(n)
        zero = np.zeros((n, n))
        return np.block([[zero, -eye], [eye, zero]])

    @cached_property
    def laplacian(self) -> NDArray[np.complex128]:
        """(N × N) Laplace-Beltrami operator, equal to div @ grad."""
        return self.div @ self.grad

    @cached_property
    def mean_weights(self) -> NDArray[np.float64]:
        """w with w·f the J-weighted mean of f."""
        j = self.grid.jacobian
        return j / np.sum(j)

    @cached_property
    def _r0_factor(self) -> tuple[NDArray[np.complex128], NDArray[np.int32]]:
        n = self.n_nodes
        weighted = self.grid.jacobian[:, None] * self.laplacian
        if self.mode != 0:
            return lu_factor(weighted)
        # Constants and the Nyquist mode span the kernel of the mode-0 Laplacian.
        ones = np.ones(n)
        alternating = nyquist_vector(n)
        bordered = np.zeros((n + 2, n + 2), dtype=complex)
        bordered[:n, :n] = weighted
        bordered[:n, n] = ones
        bordered[:n, n + 1] = alternating
        bordered[n, :n] = self.grid.jacobian
        bordered[n + 1, :n] = alternating
        return lu_factor(bordered)

    def r0_solve(self, values: NDArray[np.complex128]) -> NDArray[np.complex128]:
        """
        Apply R₀ to nodal values (or to the columns of a matrix).

        For mode 0 the bordering removes a constant λ from J f, so the
        output has zero mean and J Δu = J f − λ. Only data with zero
        J-weighted mean and no Nyquist component satisfy Δu = f.
        """
        rhs = self.grid.jacobian.reshape((-1,) + (1,) * (values.ndim - 1)) * values
        if self.mode != 0:
            return lu_solve(self._r0_factor, rhs.astype(complex))
        pad = np.zeros((2,) + values.shape[1:], dtype=complex)
        sol = lu_solve(self._r0_factor, np.concatenate([rhs.astype(complex), pad]))
        return sol[: self.n_nodes]

    @cached_property
    def r0(self) -> NDArray[np.complex128]:
        """(N × N) matrix of R₀; at mode 0 it inverts Δ on mean-zero data only."""
        return self.r0_solve(np.eye(self.n_nodes, dtype=complex))

    @cached_property
    def grad_r0(self) -> NDArray[np.complex128]:
        """(2N × N) dΓR₀, the map from a scalar source to its current."""
        return self.grad @ self.r0

    def mean(self, values: NDArray[np.complex128]) -> complex:
        """J-weighted surface mean."""
        return complex(np.dot(self.mean_weights, values))


@lru_cache(maxsize=64)
def surface_calculus(grid: SurfaceGrid, mode: int) -> SurfaceCalculus:
    """Shared operator set for (grid, mode)."""
    return SurfaceCalculus(grid, mode)


def d_gamma(f: ModalScalar, grid: SurfaceGrid) -> ModalTangentField:
    """Surface gradient dΓ f."""
    calc = surface_calculus(grid, f.mode)
    return ModalTangentField.from_stacked(f.mode, calc.grad @ f.values)


def star2(v: ModalTangentField) -> ModalTangentField:
    """Rotate by +90° about n̂: (v_τ, v_θ) ↦ (−v_θ, v_τ)."""
    return ModalTangentField(v.mode, -v.theta, v.tau.copy())


def dstar_gamma(v: ModalTangentField, grid: SurfaceGrid) -> ModalScalar:
    """Surface divergence d*Γ v."""
    calc = surface_calculus(grid, v.mode)
    return ModalScalar(v.mode, calc.div @ v.stacked())


def curl_gamma(v: ModalTangentField, grid: SurfaceGrid) -> ModalScalar:
    """Surface curl ⋆₂dΓ v (the normal component of the ambient curl)."""
    calc = surface_calculus(grid, v.mode)
    return ModalScalar(v.mode, calc.curl @ v.stacked())


def laplace_beltrami(f: ModalScalar, grid: SurfaceGrid) -> ModalScalar:
    """Δ_Γ f."""
    calc = surface_calculus(grid, f.mode)
    return ModalScalar(f.mode, calc.laplacian @ f.values)


def surface_mean(f: ModalScalar, grid: SurfaceGrid) -> complex:
    """J-weighted mean of a mode-0 profile (zero by symmetry for n ≠ 0)."""
    if f.mode != 0:
        return 0j
    return surface_calculus(grid, 0).mean(f.values)


def check_mean_zero(f: ModalScalar, grid: SurfaceGrid, tol: float = MEAN_ZERO_TOLERANCE) -> None:
    """Raise MeanZeroError unless a mode-0 profile has zero surface mean."""
    mean = surface_mean(f, grid)
    scale = max(float(np.max(np.abs(f.values), initial=0.0)), np.finfo(float).tiny)
    if abs(mean) > tol * scale:
        raise MeanZeroError(
            f"Mode-0 density has surface mean {abs(mean):.3e} (relative {abs(mean) / scale:.3e})"
        )


def r0_apply(f: ModalScalar, grid: SurfaceGrid, check: bool = True) -> ModalScalar:
    """
    Mean-zero inverse of the Laplace-Beltrami operator.

    Args:
        f: Data; at mode 0 it must have zero surface mean.
        grid: Surface discretization.
        check: Enforce the mean-zero precondition.

    Returns:
        u with zero mean at mode 0, and Δ_Γ u = f whenever f has zero
        surface mean.

    Raises:
        MeanZeroError: If `check` is set and a mode-0 input has nonzero mean.
    """
    if check:
        check_mean_zero(f, grid)
    calc = surface_calculus(grid, f.mode)
    return ModalScalar(f.mode, calc.r0_solve(f.values))


@dataclass(frozen=True, eq=False)
class HarmonicBasis:
    """
    Harmonic 1-forms of the torus of revolution (mode 0).

    psi_tau = τ̂/ρ and psi_theta = θ̂/ρ, with ⋆₂psi_tau = psi_theta.
    """

    psi_tau: ModalTangentField
    psi_theta: ModalTangentField

    def matrix(self) -> NDArray[np.complex128]:
        """(2N × 2) stacked columns [ψ_τ, ψ_θ]."""
        return np.column_stack([self.psi_tau.stacked(), self.psi_theta.stacked()])

    def combine(self, coefficients: NDArray[np.complex128]) -> ModalTangentField:
        """a_τ ψ_τ + a_θ ψ_θ."""
        return ModalTangentField.from_stacked(0, self.matrix() @ np.asarray(coefficients))


def harmonic_basis(grid: SurfaceGrid) -> HarmonicBasis:
    """Build ψ_τ = τ̂/ρ and ψ_θ = θ̂/ρ on the grid."""
    inv_rho = 1.0 / grid.rho
    zero = np.zeros_like(inv_rho)
    return HarmonicBasis(
        psi_tau=ModalTangentField.of(0, inv_rho, zero),
        psi_theta=ModalTangentField.of(0, zero, inv_rho),
    )
