"""
Boundary data for the dielectric and perfect-conductor systems.

Field samples are modal coefficients of ambient vectors at the grid
nodes (θ = 0), shape (N, 3).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from torus_debye.calculus import ModalScalar, ModalTangentField, curl_gamma, surface_calculus
from torus_debye.debye import MaterialParams
from torus_debye.geometry import SurfaceGrid

Samples = NDArray[np.complex128]


def _tangential(grid: SurfaceGrid, mode: int, field: Samples) -> ModalTangentField:
    return ModalTangentField(
        mode,
        np.einsum("ij,ij->i", field, grid.tangent).astype(complex),
        np.einsum("ij,ij->i", field, grid.azimuthal).astype(complex),
    )


def _normal(grid: SurfaceGrid, field: Samples) -> NDArray[np.complex128]:
    return np.einsum("ij,ij->i", field, grid.normal).astype(complex)


@dataclass(frozen=True, eq=False)
class BoundaryData:
    """
    Transmission data: jumps of the tangential fields and the normal data.

    Attributes:
        mode: Azimuthal mode.
        j_in: Tangential E (exterior minus interior).
        m_in: Tangential H (exterior minus interior).
        f: μ₁ n̂·H⁺ − μ₀ n̂·H⁻, equal to curlΓ j_in/(iω).
        h: −ε₁ n̂·E⁺ + ε₀ n̂·E⁻, equal to curlΓ m_in/(iω).
    """

    mode: int
    j_in: ModalTangentField
    m_in: ModalTangentField
    f: ModalScalar
    h: ModalScalar

    @classmethod
    def from_fields(
        cls,
        grid: SurfaceGrid,
        mode: int,
        params: MaterialParams,
        e_exterior: Samples,
        h_exterior: Samples,
        e_interior: Samples,
        h_interior: Samples,
    ) -> BoundaryData:
        """Form data from the fields on both sides (valid at every ω)."""
        eps0, mu0, eps1, mu1 = params.eps0, params.mu0, params.eps1, params.mu1
        f = mu1 * _normal(grid, h_exterior) - mu0 * _normal(grid, h_interior)
        h = -eps1 * _normal(grid, e_exterior) + eps0 * _normal(grid, e_interior)
        return cls(
            mode=mode,
            j_in=_tangential(grid, mode, np.asarray(e_exterior) - np.asarray(e_interior)),
            m_in=_tangential(grid, mode, np.asarray(h_exterior) - np.asarray(h_interior)),
            f=ModalScalar(mode, f),
            h=ModalScalar(mode, h),
        )

    @classmethod
    def from_tangential(
        cls,
        grid: SurfaceGrid,
        j_in: ModalTangentField,
        m_in: ModalTangentField,
        omega: float,
        f: ModalScalar | None = None,
        h: ModalScalar | None = None,
    ) -> BoundaryData:
        """
        Form data from tangential jumps, deriving f and h when ω > 0.

        Raises:
            ValueError: If ω = 0 and f or h is not supplied.
        """
        if omega == 0:
            if f is None or h is None:
                raise ValueError("At ω = 0 the normal data f and h must be supplied")
        else:
            if f is None:
                f = curl_gamma(j_in, grid).scale(1 / (1j * omega))
            if h is None:
                h = curl_gamma(m_in, grid).scale(1 / (1j * omega))
        return cls(mode=j_in.mode, j_in=j_in, m_in=m_in, f=f, h=h)

    @classmethod
    def zeros(cls, mode: int, n_nodes: int) -> BoundaryData:
        """Homogeneous data."""
        zero_t = ModalTangentField.zeros(mode, n_nodes)
        zero_s = ModalScalar.zeros(mode, n_nodes)
        return cls(mode=mode, j_in=zero_t, m_in=zero_t, f=zero_s, h=zero_s)

    def means(self, grid: SurfaceGrid) -> tuple[complex, complex]:
        """Surface means of f and h."""
        if self.mode != 0:
            return 0j, 0j
        calc = surface_calculus(grid, 0)
        return calc.mean(self.f.values), calc.mean(self.h.values)


@dataclass(frozen=True, eq=False)
class PecBoundaryData:
    """
    Perfect-conductor data.

    Attributes:
        mode: Azimuthal mode.
        e_t: Tangential E that the scattered field must match.
        n_h: Normal H that the scattered field must match.
        disk_flux: ∫_S H·ẑ dA over the spanning disk (mode 0 only).
    """

    mode: int
    e_t: ModalTangentField
    n_h: ModalScalar
    disk_flux: complex = 0j

    @classmethod
    def from_fields(
        cls,
        grid: SurfaceGrid,
        mode: int,
        e_field: Samples,
        h_field: Samples,
        disk_flux: complex = 0j,
    ) -> PecBoundaryData:
        """Form data from E and H on Γ and the H-flux through the disk."""
        return cls(
            mode=mode,
            e_t=_tangential(grid, mode, np.asarray(e_field)),
            n_h=ModalScalar(mode, _normal(grid, np.asarray(h_field))),
            disk_flux=complex(disk_flux) if mode == 0 else 0j,
        )

    @classmethod
    def zeros(cls, mode: int, n_nodes: int) -> PecBoundaryData:
        """Homogeneous data."""
        return cls(
            mode=mode,
            e_t=ModalTangentField.zeros(mode, n_nodes),
            n_h=ModalScalar.zeros(mode, n_nodes),
        )
