"""
Assembled modal systems, conditioning and the dense solve.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import LinAlgError, svdvals
from scipy.linalg import solve as dense_solve

from torus_debye.calculus import ModalScalar
from torus_debye.config import QuadratureConfig
from torus_debye.debye import DebyeSourceSet
from torus_debye.geometry import HomologyCycles, SurfaceGrid, build_cycles
from torus_debye.kernels import ModalTableCache

logger = logging.getLogger(__name__)

# Condition numbers above this are treated as singular to working precision.
MAX_CONDITION = 1e15


class ConditioningError(Exception):
    """System matrix singular to working precision."""

    def __init__(self, message: str, condition: float) -> None:
        super().__init__(message)
        self.condition = condition


class SystemKind(str, Enum):
    """Which boundary value problem a system discretizes."""

    DIELECTRIC = "dielectric"
    PEC = "pec"


@dataclass
class SolverContext:
    """Grid, cycles and kernel-table cache shared by all systems on one surface."""

    grid: SurfaceGrid
    cycles: HomologyCycles
    cache: ModalTableCache

    @classmethod
    def create(
        cls,
        grid: SurfaceGrid,
        quadrature: QuadratureConfig | None = None,
        disk_radial: int = 16,
        disk_azimuthal: int = 64,
    ) -> SolverContext:
        """Build cycles and an empty cache for a grid."""
        return cls(
            grid=grid,
            cycles=build_cycles(grid, disk_radial, disk_azimuthal),
            cache=ModalTableCache(grid, quadrature),
        )


@dataclass
class ModalSystem:
    """
    Dense system A x = b for one mode.

    Attributes:
        kind: Dielectric or perfect conductor.
        mode: Azimuthal mode n.
        layout: Unknown blocks in column order, with sizes.
        rows: Row blocks in order, with sizes.
        matrix: A.
        rhs: b.
        flagged: Whether a kernel table failed its quadrature check.
        solution: x after `solve`.
        residual_norm: ‖Ax − b‖/‖b‖ after `solve` (absolute when b = 0).
    """

    kind: SystemKind
    mode: int
    layout: list[tuple[str, int]]
    rows: list[tuple[str, int]]
    matrix: NDArray[np.complex128]
    rhs: NDArray[np.complex128]
    flagged: bool = False
    solution: NDArray[np.complex128] | None = None
    residual_norm: float | None = None
    _singular_values: NDArray[np.float64] | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        """Number of unknowns."""
        return int(self.matrix.shape[1])

    def block_slice(self, name: str) -> slice:
        """Column range of an unknown block."""
        start = 0
        for block, size in self.layout:
            if block == name:
                return slice(start, start + size)
            start += size
        raise KeyError(name)

    def row_slice(self, name: str) -> slice:
        """Row range of an equation block."""
        start = 0
        for block, size in self.rows:
            if block == name:
                return slice(start, start + size)
            start += size
        raise KeyError(name)

    def singular_values(self) -> NDArray[np.float64]:
        """Singular values of A, descending (computed once)."""
        if self._singular_values is None:
            self._singular_values = np.asarray(svdvals(self.matrix))
        return self._singular_values

    def condition_number(self) -> float:
        """σ_max/σ_min of A."""
        return condition_number(self)

    def residual(self, x: NDArray[np.complex128]) -> float:
        """‖Ax − b‖/‖b‖, or ‖Ax‖ when b = 0."""
        r = float(np.linalg.norm(self.matrix @ x - self.rhs))
        b = float(np.linalg.norm(self.rhs))
        return r / b if b > 0 else r


def condition_number(system: ModalSystem | NDArray[np.complex128]) -> float:
    """
    Ratio of extreme singular values.

    Args:
        system: Assembled system or a bare matrix.

    Returns:
        The 2-norm condition number; inf for a singular matrix.
    """
    if isinstance(system, ModalSystem):
        sv = system.singular_values()
    else:
        sv = np.asarray(svdvals(np.asarray(system)))
    if sv[-1] == 0:
        return float("inf")
    return float(sv[0] / sv[-1])


def _scalar(system: ModalSystem, x: NDArray[np.complex128], name: str) -> ModalScalar:
    return ModalScalar(system.mode, x[system.block_slice(name)].copy())


def _harmonic(
    system: ModalSystem, x: NDArray[np.complex128], name: str
) -> NDArray[np.complex128] | None:
    if all(block != name for block, _ in system.layout):
        return None
    return x[system.block_slice(name)].copy()


def solve(system: ModalSystem) -> DebyeSourceSet:
    """
    Solve by dense LU and repackage the unknowns.

    Args:
        system: Assembled system; `solution` and `residual_norm` are filled in.

    Returns:
        The Debye sources.

    Raises:
        ConditioningError: If the condition number is not finite or above 1e15.
    """
    cond = condition_number(system)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise ConditioningError(
            f"Mode-{system.mode} {system.kind.value} system is singular to working precision "
            f"(condition number {cond:.3e})",
            cond,
        )
    try:
        x = np.asarray(dense_solve(system.matrix, system.rhs), dtype=complex)
    except LinAlgError as e:
        raise ConditioningError(f"Dense solve failed: {e}", cond) from e

    system.solution = x
    system.residual_norm = system.residual(x)
    logger.debug(
        "Solved mode-%d %s system: size %d, cond %.3e, residual %.2e",
        system.mode,
        system.kind.value,
        system.size,
        cond,
        system.residual_norm,
    )

    if system.kind is SystemKind.DIELECTRIC:
        return DebyeSourceSet(
            mode=system.mode,
            r1=_scalar(system, x, "r1"),
            q1=_scalar(system, x, "q1"),
            r0=_scalar(system, x, "r0"),
            q0=_scalar(system, x, "q0"),
            a_j=_harmonic(system, x, "a_j"),
            a_m=_harmonic(system, x, "a_m"),
        )
    return DebyeSourceSet.pec(
        _scalar(system, x, "r"), _scalar(system, x, "q"), _harmonic(system, x, "a")
    )


def block_selector(layout: list[tuple[str, int]], name: str) -> NDArray[np.complex128]:
    """(size × total) matrix picking one unknown block out of the full vector."""
    total = sum(size for _, size in layout)
    start = 0
    for block, size in layout:
        if block == name:
            out = np.zeros((size, total), dtype=complex)
            out[:, start : start + size] = np.eye(size)
            return out
        start += size
    raise KeyError(name)
