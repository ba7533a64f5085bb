"""
Equispaced discretization of a torus of revolution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from torus_debye.geometry.curve import GeneratingCurve, GeometryError

MIN_NODES = 16


@dataclass(frozen=True, eq=False)
class SurfaceGrid:
    """
    Nodes t_i = 2πi/N on the generating curve with their frames.

    All vectors are Cartesian at azimuth θ = 0, where ρ̂ = x̂ and θ̂ = ŷ.
    The outward normal is n̂ = τ̂ × θ̂.
    """

    curve: GeneratingCurve
    n_nodes: int
    t: NDArray[np.float64]
    rho: NDArray[np.float64]
    z: NDArray[np.float64]
    drho: NDArray[np.float64]
    dz: NDArray[np.float64]
    d2rho: NDArray[np.float64]
    d2z: NDArray[np.float64]
    speed: NDArray[np.float64]
    positions: NDArray[np.float64]
    tangent: NDArray[np.float64]
    azimuthal: NDArray[np.float64]
    normal: NDArray[np.float64]

    @property
    def h(self) -> float:
        """Parameter spacing 2π/N."""
        return 2 * np.pi / self.n_nodes

    @property
    def jacobian(self) -> NDArray[np.float64]:
        """Area element J = |γ'|ρ (per unit t and θ)."""
        return self.speed * self.rho

    @property
    def wavenumbers(self) -> NDArray[np.float64]:
        """Integer Fourier frequencies in numpy FFT order."""
        return np.fft.fftfreq(self.n_nodes, d=1.0 / self.n_nodes)

    @property
    def cache_key(self) -> tuple[GeneratingCurve, int]:
        """Hashable identity of the grid."""
        return self.curve, self.n_nodes

    def integrate(self, values: NDArray[np.complex128] | NDArray[np.float64]) -> complex:
        """∫_Γ f dA for an axisymmetric f sampled at the nodes."""
        return complex(np.sum(values * self.jacobian) * self.h * 2 * np.pi)

    def surface_area(self) -> float:
        """Total area of Γ."""
        return float(np.sum(self.jacobian) * self.h * 2 * np.pi)

    def enclosed_volume(self) -> float:
        """Volume of the solid torus D (Pappus)."""
        return float(abs(np.sum(self.rho**2 * self.dz)) * self.h * np.pi)


def build_surface_grid(curve: GeneratingCurve, n_nodes: int) -> SurfaceGrid:
    """
    Discretize the surface generated by `curve` with N equispaced nodes.

    Args:
        curve: Oriented generating curve.
        n_nodes: Number of nodes N (even, at least 16).

    Returns:
        The populated grid.

    Raises:
        GeometryError: If N is invalid or ρ or |γ'| vanish at a node.
    """
    if n_nodes < MIN_NODES or n_nodes % 2:
        raise GeometryError(f"Node count must be even and >= {MIN_NODES}, got {n_nodes}")

    t = 2 * np.pi * np.arange(n_nodes) / n_nodes
    s = curve.evaluate(t)
    speed = s.speed
    if np.any(s.rho <= 0):
        raise GeometryError("Non-positive radius at a grid node")
    if np.any(speed <= 0):
        raise GeometryError("Zero speed at a grid node")

    zeros = np.zeros_like(t)
    tangent = np.column_stack([s.drho / speed, zeros, s.dz / speed])
    azimuthal = np.column_stack([zeros, np.ones_like(t), zeros])
    normal = np.cross(tangent, azimuthal)
    positions = np.column_stack([s.rho, zeros, s.z])

    return SurfaceGrid(
        curve=curve,
        n_nodes=n_nodes,
        t=t,
        rho=s.rho,
        z=s.z,
        drho=s.drho,
        dz=s.dz,
        d2rho=s.d2rho,
        d2z=s.d2z,
        speed=speed,
        positions=positions,
        tangent=tangent,
        azimuthal=azimuthal,
        normal=normal,
    )
