"""
Off-surface evaluation of the fields represented by Debye sources.

    E = √μ (ik S j − ∇S r − curl S m)
    H = √ε (ik S m − ∇S q + curl S j)

where S is the single layer at the medium's wavenumber. A target
(ρ_p cos θ_p, ρ_p sin θ_p, z_p) is evaluated at (ρ_p, 0, z_p) and rotated
back, picking up e^{inθ_p} per mode. The t-integral is the trapezoid rule
on the band-limited interpolant of the densities, oversampled according
to the target distance; the φ-integral uses the graded composite rule.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from torus_debye.calculus import ModalTangentField, spectral_upsample
from torus_debye.config import QuadratureConfig
from torus_debye.debye import (
    ClutchingMap,
    DebyeSourceSet,
    MaterialParams,
    dielectric_currents,
    pec_currents,
)
from torus_debye.geometry import SurfaceGrid
from torus_debye.kernels import Wavenumber, green_kernel, green_radial_derivative
from torus_debye.operators import Side
from torus_debye.quadrature import AzimuthalIntegrator

logger = logging.getLogger(__name__)

# Sources processed per block, bounding the (sources × azimuths) work arrays.
_CHUNK = 2048
# Largest t-oversampling factor.
_MAX_OVERSAMPLING = 256


class NearEvaluationError(Exception):
    """Target too close to the surface for the smooth quadrature."""


@dataclass(frozen=True)
class Medium:
    """
    Constitutive parameters of the region a field is evaluated in.

    `region` is the side of the source surface the targets lie on. A
    complex ω stands for a lossy medium with ε and μ folded into it.
    """

    eps: complex
    mu: complex
    omega: complex
    region: Side

    @property
    def k(self) -> Wavenumber:
        """Wavenumber ω√(εμ)."""
        return Wavenumber(self.omega * np.sqrt(complex(self.eps) * complex(self.mu)))

    @classmethod
    def unit(cls, k: Wavenumber | complex, region: Side) -> Medium:
        """ε = μ = 1 with ω = k, so E and H are the bare potential combinations."""
        kk = k.value if isinstance(k, Wavenumber) else complex(k)
        return cls(1.0, 1.0, kk, region)

    @classmethod
    def exterior(cls, params: MaterialParams) -> Medium:
        """Medium 1, outside the surface."""
        return cls(params.eps1, params.mu1, params.omega, Side.EXTERIOR)

    @classmethod
    def interior(cls, params: MaterialParams) -> Medium:
        """Medium 0, inside the surface."""
        return cls(params.eps0, params.mu0, params.omega, Side.INTERIOR)


@dataclass(frozen=True, eq=False)
class SurfaceSources:
    """Densities of one mode that generate a field: r, q and the currents j, m."""

    mode: int
    r: NDArray[np.complex128]
    q: NDArray[np.complex128]
    j: ModalTangentField
    m: ModalTangentField

    def scaled(self, factor: complex) -> SurfaceSources:
        """factor · sources."""
        return SurfaceSources(
            self.mode, factor * self.r, factor * self.q, self.j.scale(factor), self.m.scale(factor)
        )

    def __add__(self, other: SurfaceSources) -> SurfaceSources:
        if other.mode != self.mode:
            raise ValueError(f"Cannot add sources of modes {self.mode} and {other.mode}")
        return SurfaceSources(
            self.mode, self.r + other.r, self.q + other.q, self.j + other.j, self.m + other.m
        )


@dataclass(frozen=True)
class EMFieldSample:
    """E and H at one point, with the region it lies in relative to the source surface."""

    point: tuple[float, float, float]
    E: NDArray[np.complex128]
    H: NDArray[np.complex128]
    region: Side

    @property
    def magnitude(self) -> float:
        """max(|E|, |H|)."""
        return float(max(np.linalg.norm(self.E), np.linalg.norm(self.H)))


def pec_field_sources(
    src: DebyeSourceSet, k: Wavenumber | complex, grid: SurfaceGrid
) -> SurfaceSources:
    """Densities of the perfect-conductor representation."""
    j, m = pec_currents(src, k, grid)
    return SurfaceSources(src.mode, src.r.values, src.q.values, j, m)


def dielectric_field_sources(
    src: DebyeSourceSet, params: MaterialParams, clutch: ClutchingMap, grid: SurfaceGrid
) -> tuple[SurfaceSources, SurfaceSources]:
    """(exterior, interior) densities of the dielectric representation."""
    j1, m1, j0, m0 = dielectric_currents(src, params, clutch, grid)
    if src.r0 is None or src.q0 is None:
        raise ValueError("Dielectric field sources need interior densities r0, q0")
    return (
        SurfaceSources(src.mode, src.r1.values, src.q1.values, j1, m1),
        SurfaceSources(src.mode, src.r0.values, src.q0.values, j0, m0),
    )


class FieldEvaluator:
    """
    Evaluates fields of sources living on one surface.

    Args:
        grid: Surface carrying the sources.
        config: Quadrature settings (oversampling, near threshold, panel order).
    """

    def __init__(self, grid: SurfaceGrid, config: QuadratureConfig | None = None) -> None:
        self.grid = grid
        self.config = config or QuadratureConfig()
        self.integrator = AzimuthalIntegrator(panel_order=self.config.panel_order)
        self.min_distance = self.config.near_threshold * grid.curve.tube_diameter
        self._rho_max = float(np.max(grid.rho))
        self._step = float(grid.h * np.max(grid.speed))

    def oversampling(self, distance: float) -> int:
        """t-oversampling factor for a target at `distance` from the surface."""
        factor = int(np.ceil(self.config.oversampling * self._step / distance))
        return max(1, min(factor, _MAX_OVERSAMPLING))

    def locate(self, point: ArrayLike) -> tuple[float, Side]:
        """
        Distance to the surface and side of a point.

        Raises:
            NearEvaluationError: If the point is closer than the threshold.
        """
        x, y, z = (float(c) for c in np.asarray(point, dtype=float))
        rho = float(np.hypot(x, y))
        distance = self.grid.curve.distance(rho, z)
        if distance < self.min_distance:
            raise NearEvaluationError(
                f"Point at distance {distance:.3e} is closer than {self.min_distance:.3e}"
            )
        side = Side.INTERIOR if self.grid.curve.contains(rho, z) else Side.EXTERIOR
        return distance, side

    def evaluate(
        self,
        point: ArrayLike,
        sources: SurfaceSources | Sequence[SurfaceSources],
        medium: Medium,
    ) -> EMFieldSample:
        """
        Fields at one point, summed over the modes of `sources`.

        Args:
            point: Cartesian target.
            sources: Densities, one entry per mode.
            medium: Parameters of the region containing the point.

        Returns:
            The field sample.

        Raises:
            NearEvaluationError: If the point is too close to the surface.
            ValueError: If the point is not in `medium.region`.
        """
        p = np.asarray(point, dtype=float)
        distance, side = self.locate(p)
        if side is not medium.region:
            raise ValueError(
                f"Point lies in the {side.value} region, medium is {medium.region.value}"
            )
        items = [sources] if isinstance(sources, SurfaceSources) else list(sources)

        rho_p = float(np.hypot(p[0], p[1]))
        theta_p = float(np.arctan2(p[1], p[0])) if rho_p > 0 else 0.0
        c, s = np.cos(theta_p), np.sin(theta_p)
        rotation = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])

        e_total = np.zeros(3, dtype=complex)
        h_total = np.zeros(3, dtype=complex)
        for item in items:
            e, h = self._meridian_fields(rho_p, float(p[2]), distance, item, medium)
            phase = np.exp(1j * item.mode * theta_p)
            e_total += phase * (rotation @ e)
            h_total += phase * (rotation @ h)
        point_xyz = (float(p[0]), float(p[1]), float(p[2]))
        return EMFieldSample(point=point_xyz, E=e_total, H=h_total, region=side)

    def evaluate_many(
        self,
        points: ArrayLike,
        sources: SurfaceSources | Sequence[SurfaceSources],
        medium: Medium,
    ) -> tuple[NDArray[np.complex128], NDArray[np.complex128]]:
        """E and H at each row of `points`, shape (P, 3) each."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        samples = [self.evaluate(p, sources, medium) for p in pts]
        return np.array([s.E for s in samples]), np.array([s.H for s in samples])

    def _meridian_fields(
        self,
        rho_p: float,
        z_p: float,
        distance: float,
        src: SurfaceSources,
        medium: Medium,
    ) -> tuple[NDArray[np.complex128], NDArray[np.complex128]]:
        grid = self.grid
        k = medium.k
        factor = self.oversampling(distance)
        fine = grid.n_nodes * factor
        t = 2 * np.pi * np.arange(fine) / fine
        curve = grid.curve.evaluate(t)
        speed = curve.speed
        rho_t = curve.drho / speed
        z_t = curve.dz / speed
        weight = curve.rho * speed * (2 * np.pi / fine)

        dens = spectral_upsample(
            np.vstack([src.r, src.q, src.j.tau, src.j.theta, src.m.tau, src.m.theta]), factor
        )

        scale = max(rho_p, self._rho_max)
        rule = self.integrator.graded_rule(src.mode, abs(k) * scale, distance / scale)
        phases = rule.phases(src.mode)
        cos = np.cos(rule.nodes)[None, :]
        sin = np.sin(rule.nodes)[None, :]

        ik = 1j * k.value
        a_j = np.zeros(3, dtype=complex)
        a_m = np.zeros(3, dtype=complex)
        grad_r = np.zeros(3, dtype=complex)
        grad_q = np.zeros(3, dtype=complex)
        curl_j = np.zeros(3, dtype=complex)
        curl_m = np.zeros(3, dtype=complex)

        for start in range(0, fine, _CHUNK):
            sl = slice(start, min(start + _CHUNK, fine))
            rho_s = curve.rho[sl, None]
            dx = rho_p - rho_s * cos
            dy = -rho_s * sin
            dz = np.broadcast_to((z_p - curve.z[sl])[:, None], dx.shape)
            r = np.sqrt(dx * dx + dy * dy + dz * dz)
            w = weight[sl, None] * phases[None, :]
            g = green_kernel(r, k) * w
            gp = green_radial_derivative(r, k) / r * w

            r_d, q_d, jt, jp, mt, mp = (d[sl, None] for d in dens)
            rt = rho_t[sl, None]
            zt = z_t[sl, None]
            # Ambient components of a source tangent field at azimuth φ.
            j_vec = (jt * rt * cos - jp * sin, jt * rt * sin + jp * cos, jt * zt)
            m_vec = (mt * rt * cos - mp * sin, mt * rt * sin + mp * cos, mt * zt)
            d_vec = (dx, dy, dz)

            for axis in range(3):
                a_j[axis] += np.sum(g * j_vec[axis])
                a_m[axis] += np.sum(g * m_vec[axis])
                grad_r[axis] += np.sum(gp * r_d * d_vec[axis])
                grad_q[axis] += np.sum(gp * q_d * d_vec[axis])
            for axis, (b, c_) in enumerate(((1, 2), (2, 0), (0, 1))):
                curl_j[axis] += np.sum(gp * (d_vec[b] * j_vec[c_] - d_vec[c_] * j_vec[b]))
                curl_m[axis] += np.sum(gp * (d_vec[b] * m_vec[c_] - d_vec[c_] * m_vec[b]))

        sqrt_mu = np.sqrt(complex(medium.mu))
        sqrt_eps = np.sqrt(complex(medium.eps))
        e_field = sqrt_mu * (ik * a_j - grad_r - curl_m)
        h_field = sqrt_eps * (ik * a_m - grad_q + curl_j)
        return e_field, h_field
