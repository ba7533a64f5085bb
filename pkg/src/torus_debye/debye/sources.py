"""
Debye source sets and clutching maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import NDArray

from torus_debye.calculus import ModalScalar, ModalTangentField, surface_mean
from torus_debye.geometry import SurfaceGrid


@dataclass(frozen=True, eq=False)
class DebyeSourceSet:
    """
    Scalar Debye sources of one mode, plus harmonic coefficients at mode 0.

    For the dielectric problem r1, q1 generate the exterior field and
    r0, q0 the interior field. The perfect-conductor problem uses r1, q1
    only (exposed as `r` and `q`). Harmonic coefficients are given in the
    basis {ψ_τ, ψ_θ}.
    """

    mode: int
    r1: ModalScalar
    q1: ModalScalar
    r0: ModalScalar | None = None
    q0: ModalScalar | None = None
    a_j: NDArray[np.complex128] | None = None
    a_m: NDArray[np.complex128] | None = None

    def __post_init__(self) -> None:
        if self.mode != 0 and (self.a_j is not None or self.a_m is not None):
            raise ValueError("Harmonic coefficients only exist at mode 0")
        for scalar in (self.r1, self.q1, self.r0, self.q0):
            if scalar is not None and scalar.mode != self.mode:
                raise ValueError(f"Source of mode {scalar.mode} in a mode-{self.mode} set")

    @classmethod
    def pec(
        cls, r: ModalScalar, q: ModalScalar, a: NDArray[np.complex128] | None = None
    ) -> DebyeSourceSet:
        """Sources of the perfect-conductor problem."""
        return cls(mode=r.mode, r1=r, q1=q, a_j=a)

    @classmethod
    def zeros(cls, mode: int, n_nodes: int, dielectric: bool = True) -> DebyeSourceSet:
        """All-zero sources."""
        zero = ModalScalar.zeros(mode, n_nodes)
        harmonic = np.zeros(2, dtype=complex) if mode == 0 else None
        if dielectric:
            return cls(mode, zero, zero, zero, zero, harmonic, harmonic)
        return cls(mode, zero, zero, a_j=harmonic)

    @property
    def r(self) -> ModalScalar:
        """Electric source of the perfect-conductor problem."""
        return self.r1

    @property
    def q(self) -> ModalScalar:
        """Magnetic source of the perfect-conductor problem."""
        return self.q1

    @property
    def is_dielectric(self) -> bool:
        """Whether interior sources are present."""
        return self.r0 is not None

    def scalars(self) -> dict[str, ModalScalar]:
        """Named scalar sources that are present."""
        named = {"r0": self.r0, "q0": self.q0, "r1": self.r1, "q1": self.q1}
        return {k: v for k, v in named.items() if v is not None}

    def means(self, grid: SurfaceGrid) -> dict[str, float]:
        """Absolute surface means of the scalar sources."""
        return {k: abs(surface_mean(v, grid)) for k, v in self.scalars().items()}

    def norm(self) -> float:
        """Largest nodal magnitude over all sources and coefficients."""
        values = [float(np.max(np.abs(v.values))) for v in self.scalars().values()]
        values += [float(np.max(np.abs(a))) for a in (self.a_j, self.a_m) if a is not None]
        return max(values)

    def conjugate(self) -> DebyeSourceSet:
        """Complex conjugate, which belongs to mode −n."""

        def conj(s: ModalScalar | None) -> ModalScalar | None:
            return None if s is None else ModalScalar(-s.mode, np.conj(s.values))

        return DebyeSourceSet(
            mode=-self.mode,
            r1=ModalScalar(-self.mode, np.conj(self.r1.values)),
            q1=ModalScalar(-self.mode, np.conj(self.q1.values)),
            r0=conj(self.r0),
            q0=conj(self.q0),
            a_j=None if self.a_j is None else np.conj(self.a_j),
            a_m=None if self.a_m is None else np.conj(self.a_m),
        )


@dataclass(frozen=True)
class ClutchingMap:
    """
    U = cos t_c Id + sin t_c ⋆₂ on harmonic forms, ⋆₂ on their complement.

    Since ⋆₂ψ_τ = ψ_θ and ⋆₂ψ_θ = −ψ_τ, U acts on harmonic coefficients
    (a_τ, a_θ) as a rotation by t_c.
    """

    tc: float = 0.0

    @cached_property
    def matrix(self) -> NDArray[np.float64]:
        """2×2 rotation on harmonic coefficients."""
        c, s = np.cos(self.tc), np.sin(self.tc)
        return np.array([[c, -s], [s, c]])

    def apply_harmonic(self, coefficients: NDArray[np.complex128]) -> NDArray[np.complex128]:
        """Rotate harmonic coefficients."""
        return self.matrix @ np.asarray(coefficients, dtype=complex)

    def apply(
        self,
        complement: ModalTangentField,
        coefficients: NDArray[np.complex128] | None,
        basis_matrix: NDArray[np.complex128] | None = None,
    ) -> ModalTangentField:
        """
        U applied to (complement + Σ a ψ).

        Args:
            complement: Non-harmonic part of the field.
            coefficients: Harmonic coefficients, or None away from mode 0.
            basis_matrix: (2N × 2) harmonic basis; required with coefficients.

        Returns:
            ⋆₂(complement) + Σ (R a) ψ.
        """
        rotated = ModalTangentField(complement.mode, -complement.theta, complement.tau)
        if coefficients is None:
            return rotated
        if basis_matrix is None:
            raise ValueError("Harmonic basis required to apply U to harmonic coefficients")
        harmonic = basis_matrix @ self.apply_harmonic(coefficients)
        return rotated + ModalTangentField.from_stacked(complement.mode, harmonic)
