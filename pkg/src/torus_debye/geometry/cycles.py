"""
Homology cycles of the torus and the spanning disk of the B-cycle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from torus_debye.geometry.grid import SurfaceGrid


@dataclass(frozen=True, eq=False)
class SpanningDisk:
    """
    Planar disk {|x_⊥| ≤ R, z = z*} bounded by the B-cycle.

    The disk lies in the exterior region, through the hole of the torus.
    Its normal is +ẑ, which orients the B-cycle by increasing θ.
    """

    radius: float
    height: float
    nodes: NDArray[np.float64]
    weights: NDArray[np.float64]
    azimuthal_count: int = 1

    @property
    def area(self) -> float:
        """Quadrature area (equals πR²)."""
        return float(np.sum(self.weights))

    def flux(self, field: NDArray[np.complex128] | NDArray[np.float64]) -> complex:
        """Flux ∫_S F·ẑ dA of a vector field sampled at the disk nodes."""
        values = np.asarray(field)
        return complex(np.sum(self.weights * values[:, 2]))

    def rings(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """
        Radii of the quadrature rings and the total weight on each.

        For an axisymmetric field the flux reduces to Σ W_i F_z(r_i).
        """
        count = self.azimuthal_count
        ring_nodes = self.nodes[::count]
        radii = np.hypot(ring_nodes[:, 0], ring_nodes[:, 1])
        return radii, self.weights.reshape(-1, count).sum(axis=1)

    def boundary_points(self, count: int) -> NDArray[np.float64]:
        """Equispaced points on the rim of the disk."""
        phi = 2 * np.pi * np.arange(count) / count
        return np.column_stack(
            [self.radius * np.cos(phi), self.radius * np.sin(phi), np.full(count, self.height)]
        )


@dataclass(frozen=True, eq=False)
class HomologyCycles:
    """A-cycle (poloidal loop at θ = 0), B-cycle (toroidal circle at t*), disk."""

    a_weights: NDArray[np.float64]
    b_index: int
    b_radius: float
    disk: SpanningDisk

    def a_circulation(self, tau_component: NDArray[np.complex128]) -> complex:
        """∮_A v·dl for a mode-0 tangent field given by its τ̂ component."""
        return complex(np.dot(self.a_weights, tau_component))

    def b_circulation(self, theta_component: NDArray[np.complex128]) -> complex:
        """∮_B v·dl for a mode-0 tangent field given by its θ̂ component."""
        return complex(2 * np.pi * self.b_radius * theta_component[self.b_index])

    def a_functional(self, n_nodes: int) -> NDArray[np.float64]:
        """Row vector acting on stacked [v_τ; v_θ] that returns ∮_A v."""
        row = np.zeros(2 * n_nodes)
        row[:n_nodes] = self.a_weights
        return row

    def b_functional(self, n_nodes: int) -> NDArray[np.float64]:
        """Row vector acting on stacked [v_τ; v_θ] that returns ∮_B v."""
        row = np.zeros(2 * n_nodes)
        row[n_nodes + self.b_index] = 2 * np.pi * self.b_radius
        return row


def build_cycles(
    grid: SurfaceGrid, disk_radial: int = 16, disk_azimuthal: int = 64
) -> HomologyCycles:
    """
    Locate the homology cycles and build the spanning-disk quadrature.

    The radial rule is Gauss-Legendre in r on [0, R] with the polar
    Jacobian r folded into the weights; the azimuthal rule is the
    trapezoid rule.

    Args:
        grid: Surface discretization.
        disk_radial: Radial Gauss-Legendre points.
        disk_azimuthal: Azimuthal trapezoid points.

    Returns:
        The cycles and disk.
    """
    b_index = int(np.argmin(grid.rho))
    radius = float(grid.rho[b_index])
    height = float(grid.z[b_index])

    x, w = np.polynomial.legendre.leggauss(disk_radial)
    r = 0.5 * radius * (x + 1)
    wr = 0.5 * radius * w * r
    phi = 2 * np.pi * np.arange(disk_azimuthal) / disk_azimuthal
    rr, pp = np.meshgrid(r, phi, indexing="ij")
    nodes = np.column_stack(
        [(rr * np.cos(pp)).ravel(), (rr * np.sin(pp)).ravel(), np.full(rr.size, height)]
    )
    weights = np.repeat(wr, disk_azimuthal) * (2 * np.pi / disk_azimuthal)

    return HomologyCycles(
        a_weights=grid.h * grid.speed,
        b_index=b_index,
        b_radius=radius,
        disk=SpanningDisk(
            radius=radius,
            height=height,
            nodes=nodes,
            weights=weights,
            azimuthal_count=disk_azimuthal,
        ),
    )
