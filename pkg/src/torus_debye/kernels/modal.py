"""
Azimuthally reduced kernel tables.

A table is the Nyström matrix of one kernel at one azimuthal mode: entry
(i, j) approximates the contribution of the nodal value at t_j to

    ∫∫ K(x(t_i, 0), y(t, φ)) f(t) e^{inφ} ρ(t) |γ'(t)| dφ dt.

The φ-integral uses a graded composite rule shared by all entries of a
table. In t the trapezoid rule is kept away from the diagonal and the
Alpert correction supplies the log-singular part through auxiliary
points, whose densities are interpolated from the grid.

Families that share a (mode, wavenumber) pair are built in one pass, so
distances and frame products are computed once.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from torus_debye.config import QuadratureConfig
from torus_debye.geometry import SurfaceGrid
from torus_debye.kernels.green import (
    Wavenumber,
    difference_kernel,
    difference_radial_derivative,
    green_kernel,
    green_radial_derivative,
)
from torus_debye.quadrature import AlpertStencil, AzimuthalIntegrator, AzimuthalRule, alpert_rule

logger = logging.getLogger(__name__)

# Relative disagreement with the refined rule above which a table is flagged.
_FLAG_FACTOR = 100.0


class KernelFamily(str, Enum):
    """Kernels with modal tables."""

    SINGLE_LAYER = "S"
    NORMAL_DERIVATIVE = "K0"
    VECTOR = "V"
    DOUBLE_CURL = "K4"
    SINGLE_LAYER_DIFF = "S_diff"
    DOUBLE_CURL_DIFF = "K4_diff"


# Component names: first letter target frame (t, p, n), second source frame (t, p).
FAMILY_COMPONENTS: dict[KernelFamily, tuple[str, ...]] = {
    KernelFamily.SINGLE_LAYER: ("s",),
    KernelFamily.NORMAL_DERIVATIVE: ("s",),
    KernelFamily.VECTOR: ("tt", "tp", "pt", "pp", "nt", "np"),
    KernelFamily.DOUBLE_CURL: ("tt", "tp", "pt", "pp"),
    KernelFamily.SINGLE_LAYER_DIFF: ("s",),
    KernelFamily.DOUBLE_CURL_DIFF: ("tt", "tp", "pt", "pp"),
}


@dataclass(frozen=True, eq=False)
class ModalKernelTable:
    """
    Nyström matrices of one kernel family at one mode and wavenumber.

    Attributes:
        family: Kernel family.
        mode: Azimuthal mode n.
        wavenumber: Wavenumber k.
        components: N×N matrix per component name.
        check_error: Relative change of a checked row under a refined rule.
        flagged: Whether the check exceeded the tolerance.
    """

    family: KernelFamily
    mode: int
    wavenumber: Wavenumber
    components: dict[str, NDArray[np.complex128]]
    check_error: float
    flagged: bool

    def matrix(self, component: str = "s") -> NDArray[np.complex128]:
        """Matrix of one component."""
        return self.components[component]


@dataclass(frozen=True)
class _Frames:
    """Points on the generating curve with their unit tangent components."""

    rho: NDArray[np.float64]
    z: NDArray[np.float64]
    rho_t: NDArray[np.float64]
    z_t: NDArray[np.float64]
    weight: NDArray[np.float64]


def _grid_frames(grid: SurfaceGrid) -> _Frames:
    return _Frames(
        rho=grid.rho,
        z=grid.z,
        rho_t=grid.drho / grid.speed,
        z_t=grid.dz / grid.speed,
        weight=grid.jacobian * grid.h,
    )


def _aux_frames(grid: SurfaceGrid, stencil: AlpertStencil) -> _Frames:
    """Auxiliary points of every target row, flattened row-major (N × 2m)."""
    t = (grid.t[:, None] + stencil.shifts[None, :]).ravel()
    s = grid.curve.evaluate(t)
    speed = s.speed
    weight = np.tile(stencil.weights, grid.n_nodes) * speed * s.rho
    return _Frames(rho=s.rho, z=s.z, rho_t=s.drho / speed, z_t=s.dz / speed, weight=weight)


def _separation(
    target: tuple[float, float], rho: NDArray[np.float64], z: NDArray[np.float64]
) -> NDArray[np.float64]:
    """Meridian distance over sqrt(ρρ'), the width of the φ-peak."""
    rho_i, z_i = target
    return np.hypot(rho - rho_i, z - z_i) / np.sqrt(rho * rho_i)


def evaluate_components(
    families: tuple[KernelFamily, ...],
    target: tuple[float, float, float, float],
    source: _Frames,
    phi: NDArray[np.float64],
    k: Wavenumber,
) -> dict[tuple[KernelFamily, str], NDArray[np.complex128]]:
    """
    Kernel values for a target at θ = 0 and sources at azimuths φ.

    Args:
        families: Families to evaluate.
        target: (ρ, z, ρ_τ, z_τ) of the target node.
        source: Source points (M of them).
        phi: Source azimuths (Q of them).
        k: Wavenumber.

    Returns:
        (family, component) → M×Q array.
    """
    rho_i, z_i, rt_i, zt_i = target
    cos = np.cos(phi)[None, :]
    sin = np.sin(phi)[None, :]
    rho_j = source.rho[:, None]
    rt_j = source.rho_t[:, None]
    zt_j = source.z_t[:, None]

    dx = rho_i - rho_j * cos
    dy = -rho_j * sin
    dz = np.broadcast_to((z_i - source.z)[:, None], dx.shape)
    r = np.sqrt(dx * dx + dy * dy + dz * dz)

    out: dict[tuple[KernelFamily, str], NDArray[np.complex128]] = {}
    wanted = set(families)

    if KernelFamily.SINGLE_LAYER in wanted or KernelFamily.VECTOR in wanted:
        g = green_kernel(r, k)
        if KernelFamily.SINGLE_LAYER in wanted:
            out[(KernelFamily.SINGLE_LAYER, "s")] = g
        if KernelFamily.VECTOR in wanted:
            out[(KernelFamily.VECTOR, "tt")] = g * (rt_i * rt_j * cos + zt_i * zt_j)
            out[(KernelFamily.VECTOR, "tp")] = g * (-rt_i * sin)
            out[(KernelFamily.VECTOR, "pt")] = g * (rt_j * sin)
            out[(KernelFamily.VECTOR, "pp")] = g * cos
            out[(KernelFamily.VECTOR, "nt")] = g * (-zt_i * rt_j * cos + rt_i * zt_j)
            out[(KernelFamily.VECTOR, "np")] = g * (zt_i * sin)

    if KernelFamily.SINGLE_LAYER_DIFF in wanted:
        out[(KernelFamily.SINGLE_LAYER_DIFF, "s")] = difference_kernel(r, k)

    d_dot_n = -zt_i * dx + rt_i * dz
    curl_families = [
        (KernelFamily.DOUBLE_CURL, green_radial_derivative),
        (KernelFamily.DOUBLE_CURL_DIFF, difference_radial_derivative),
    ]
    needs_curl = any(f in wanted for f, _ in curl_families)

    if KernelFamily.NORMAL_DERIVATIVE in wanted:
        out[(KernelFamily.NORMAL_DERIVATIVE, "s")] = green_radial_derivative(r, k) / r * d_dot_n

    if needs_curl:
        d_dot_t = rt_i * dx + zt_i * dz
        d_dot_p = dy
        n_dot_t = -zt_i * rt_j * cos + rt_i * zt_j
        n_dot_p = zt_i * sin
        # n × (∇g × b) = ∇g (n·b) − b (n·∇g), projected on the target frame.
        products = {
            "tt": d_dot_t * n_dot_t - (rt_i * rt_j * cos + zt_i * zt_j) * d_dot_n,
            "tp": d_dot_t * n_dot_p - (-rt_i * sin) * d_dot_n,
            "pt": d_dot_p * n_dot_t - (rt_j * sin) * d_dot_n,
            "pp": d_dot_p * n_dot_p - cos * d_dot_n,
        }
        for family, radial in curl_families:
            if family in wanted:
                scale = radial(r, k) / r
                for name, product in products.items():
                    out[(family, name)] = scale * product
    return out


class ModalTableBuilder:
    """
    Builds modal tables for one grid and quadrature configuration.

    Args:
        grid: Surface grid.
        config: Quadrature settings.
    """

    def __init__(self, grid: SurfaceGrid, config: QuadratureConfig | None = None) -> None:
        self.grid = grid
        self.config = config or QuadratureConfig()
        self.rule = alpert_rule(self.config.order)
        self.stencil = self.rule.stencil(grid.n_nodes)
        self.integrator = AzimuthalIntegrator(
            tol=self.config.azimuthal_tol,
            max_depth=self.config.max_depth,
            panel_order=self.config.panel_order,
        )
        self._nodes = _grid_frames(grid)
        self._aux = _aux_frames(grid, self.stencil)
        self._near_separation, self._far_separation = self._separations()

    def _separations(self) -> tuple[float, float]:
        g = self.grid
        n = g.n_nodes
        width = self.stencil.shifts.size
        near = np.inf
        far = np.inf
        for i in range(n):
            target = (float(g.rho[i]), float(g.z[i]))
            rows = slice(i * width, (i + 1) * width)
            aux_sep = _separation(target, self._aux.rho[rows], self._aux.z[rows])
            near = min(near, float(np.min(aux_sep)))
            mask = self.stencil.far_mask_for(i)
            far = min(far, float(np.min(_separation(target, g.rho[mask], g.z[mask]))))
        return near, far

    def _rules(self, mode: int, k: Wavenumber) -> tuple[AzimuthalRule, AzimuthalRule]:
        k_scale = abs(k) * float(np.max(self.grid.rho))
        near = self.integrator.graded_rule(mode, k_scale, self._near_separation)
        far = self.integrator.graded_rule(mode, k_scale, self._far_separation)
        return near, far

    def _row(
        self,
        i: int,
        families: tuple[KernelFamily, ...],
        k: Wavenumber,
        near_rule: AzimuthalRule,
        far_rule: AzimuthalRule,
        mode: int,
    ) -> dict[tuple[KernelFamily, str], NDArray[np.complex128]]:
        g = self.grid
        n = g.n_nodes
        width = self.stencil.shifts.size
        target = (
            float(g.rho[i]),
            float(g.z[i]),
            float(g.drho[i] / g.speed[i]),
            float(g.dz[i] / g.speed[i]),
        )

        mask = self.stencil.far_mask_for(i)
        far = _Frames(
            rho=self._nodes.rho[mask],
            z=self._nodes.z[mask],
            rho_t=self._nodes.rho_t[mask],
            z_t=self._nodes.z_t[mask],
            weight=self._nodes.weight[mask],
        )
        rows = slice(i * width, (i + 1) * width)
        aux = _Frames(
            rho=self._aux.rho[rows],
            z=self._aux.z[rows],
            rho_t=self._aux.rho_t[rows],
            z_t=self._aux.z_t[rows],
            weight=self._aux.weight[rows],
        )

        far_values = evaluate_components(families, target, far, far_rule.nodes, k)
        aux_values = evaluate_components(families, target, aux, near_rule.nodes, k)
        far_phase = far_rule.phases(mode)
        aux_phase = near_rule.phases(mode)
        interpolation = self.stencil.interpolation_for(i)

        out: dict[tuple[KernelFamily, str], NDArray[np.complex128]] = {}
        for key, values in far_values.items():
            row = np.zeros(n, dtype=complex)
            row[mask] = (values @ far_phase) * far.weight
            row += ((aux_values[key] @ aux_phase) * aux.weight) @ interpolation
            out[key] = row
        return out

    def build(
        self, families: tuple[KernelFamily, ...], mode: int, k: Wavenumber | complex
    ) -> dict[KernelFamily, ModalKernelTable]:
        """
        Build tables for several families at one mode and wavenumber.

        Args:
            families: Families to build.
            mode: Azimuthal mode n.
            k: Wavenumber.

        Returns:
            Table per family. Tables whose checked row moved by more than
            the tolerance under a refined azimuthal rule are flagged.
        """
        kk = k if isinstance(k, Wavenumber) else Wavenumber(k)
        n = self.grid.n_nodes
        near_rule, far_rule = self._rules(mode, kk)
        logger.debug(
            "Building %s at n=%d, k=%s (%d/%d azimuthal nodes)",
            ",".join(f.value for f in families),
            mode,
            kk.value,
            len(near_rule),
            len(far_rule),
        )

        matrices = {
            (family, name): np.empty((n, n), dtype=complex)
            for family in families
            for name in FAMILY_COMPONENTS[family]
        }
        for i in range(n):
            for key, row in self._row(i, families, kk, near_rule, far_rule, mode).items():
                matrices[key][i] = row

        check = self._row(0, families, kk, near_rule.refined(), far_rule.refined(), mode)
        tables: dict[KernelFamily, ModalKernelTable] = {}
        for family in families:
            names = FAMILY_COMPONENTS[family]
            # One scale per family: some components vanish identically at n = 0.
            scale = max(
                max(float(np.max(np.abs(check[(family, name)]))) for name in names),
                np.finfo(float).tiny,
            )
            error = max(
                float(np.max(np.abs(check[(family, name)] - matrices[(family, name)][0])))
                for name in names
            ) / scale
            flagged = error > _FLAG_FACTOR * self.config.azimuthal_tol
            if flagged:
                logger.warning(
                    "Azimuthal check for %s at n=%d moved by %.1e", family.value, mode, error
                )
            tables[family] = ModalKernelTable(
                family=family,
                mode=mode,
                wavenumber=kk,
                components={name: matrices[(family, name)] for name in FAMILY_COMPONENTS[family]},
                check_error=error,
                flagged=flagged,
            )
        return tables


def build_modal_table(
    family: KernelFamily,
    mode: int,
    k: Wavenumber | complex,
    grid: SurfaceGrid,
    config: QuadratureConfig | None = None,
) -> ModalKernelTable:
    """Build a single family's table."""
    return ModalTableBuilder(grid, config).build((family,), mode, k)[family]


class ModalTableCache:
    """
    Memoizes modal tables per (family, mode, wavenumber) for one grid.

    Missing families requested together are built in one pass.
    """

    def __init__(self, grid: SurfaceGrid, config: QuadratureConfig | None = None) -> None:
        self.grid = grid
        self.config = config or QuadratureConfig()
        self._builder: ModalTableBuilder | None = None
        self._tables: dict[tuple[KernelFamily, int, complex], ModalKernelTable] = {}
        self.hits = 0
        self.misses = 0

    @property
    def builder(self) -> ModalTableBuilder:
        """Builder, created on first use."""
        if self._builder is None:
            self._builder = ModalTableBuilder(self.grid, self.config)
        return self._builder

    def tables(
        self, families: tuple[KernelFamily, ...], mode: int, k: Wavenumber | complex
    ) -> dict[KernelFamily, ModalKernelTable]:
        """Tables for several families, building only what is missing."""
        kk = k if isinstance(k, Wavenumber) else Wavenumber(k)
        missing = tuple(f for f in families if (f, mode, kk.value) not in self._tables)
        self.hits += len(families) - len(missing)
        if missing:
            self.misses += len(missing)
            for family, table in self.builder.build(missing, mode, kk).items():
                self._tables[(family, mode, kk.value)] = table
        else:
            logger.debug("Modal table cache hit at n=%d, k=%s", mode, kk.value)
        return {f: self._tables[(f, mode, kk.value)] for f in families}

    def get(self, family: KernelFamily, mode: int, k: Wavenumber | complex) -> ModalKernelTable:
        """One family's table."""
        return self.tables((family,), mode, k)[family]

    def __len__(self) -> int:
        return len(self._tables)

    def clear(self) -> None:
        """Drop all tables (counters are kept)."""
        self._tables.clear()
