"""
Currents generated by Debye sources.

Currents are linear in the unknowns, so they are built as `LinearMap`s:
one matrix per named unknown block. The solver turns these into system
columns and the field evaluator applies them to solved sources.

Perfect conductor (medium 1, wavenumber k):

    j = ik (dΓR₀r − ⋆₂dΓR₀q) + Σ a ψ,    m = ⋆₂j

Dielectric (exterior currents from r₁, q₁ and the interior sources):

    j₁ = ik₁ dΓR₀r₁ − c_r ⋆₂dΓR₀r₀ + Σ a_j ψ
    m₁ = ik₁ dΓR₀q₁ − c_q ⋆₂dΓR₀q₀ + Σ a_m ψ
    j₀ = √(ε₁/ε₀) U j₁,   m₀ = √(μ₁/μ₀) U m₁

with c_r = iωε₀√(μ₀/ε₁) and c_q = iωμ₀√(ε₀/μ₁), taken on the branch for
which d*Γj₀ = ik₀r₀ and d*Γm₀ = ik₀q₀ hold exactly.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from torus_debye.calculus import (
    ModalScalar,
    ModalTangentField,
    harmonic_basis,
    surface_calculus,
)
from torus_debye.debye.params import MaterialParams, ParameterError
from torus_debye.debye.sources import ClutchingMap, DebyeSourceSet
from torus_debye.geometry import SurfaceGrid
from torus_debye.kernels import Wavenumber

Array = NDArray[np.complex128]


@dataclass(frozen=True, eq=False)
class LinearMap:
    """A stacked tangent field as a sum of matrices applied to named unknowns."""

    rows: int
    blocks: dict[str, Array]

    def apply(self, values: Mapping[str, Array | None]) -> Array:
        """Evaluate on unknown values; missing or None blocks count as zero."""
        out = np.zeros(self.rows, dtype=complex)
        for name, block in self.blocks.items():
            value = values.get(name)
            if value is not None:
                out += block @ value
        return out

    def columns(self, layout: Sequence[tuple[str, int]]) -> Array:
        """Matrix against a concatenated unknown vector with the given block sizes."""
        parts = []
        for name, size in layout:
            block = self.blocks.get(name)
            parts.append(block if block is not None else np.zeros((self.rows, size), dtype=complex))
        return np.hstack(parts)

    def scaled(self, factor: complex) -> LinearMap:
        """factor · map."""
        return LinearMap(self.rows, {k: factor * v for k, v in self.blocks.items()})

    def rotated(self) -> LinearMap:
        """⋆₂ ∘ map."""
        n = self.rows // 2
        return LinearMap(
            self.rows, {k: np.vstack([-v[n:], v[:n]]) for k, v in self.blocks.items()}
        )


def pec_current_maps(
    grid: SurfaceGrid, mode: int, k: Wavenumber | complex
) -> tuple[LinearMap, LinearMap]:
    """
    (j, m) for the perfect conductor as maps of r, q and (mode 0) a.

    Args:
        grid: Surface grid.
        mode: Azimuthal mode.
        k: Exterior wavenumber.

    Returns:
        Maps for j and m = ⋆₂j.
    """
    kk = complex(k.value if isinstance(k, Wavenumber) else k)
    calc = surface_calculus(grid, mode)
    blocks: dict[str, Array] = {
        "r": 1j * kk * calc.grad_r0,
        "q": -1j * kk * (calc.star @ calc.grad_r0),
    }
    if mode == 0:
        blocks["a"] = harmonic_basis(grid).matrix()
    j = LinearMap(2 * grid.n_nodes, blocks)
    return j, j.rotated()


def dielectric_current_maps(
    grid: SurfaceGrid, mode: int, params: MaterialParams, clutch: ClutchingMap
) -> dict[str, LinearMap]:
    """
    Exterior and interior currents as maps of r0, q0, r1, q1, a_j, a_m.

    Returns:
        Maps keyed "j1", "m1", "j0", "m0".

    Raises:
        ParameterError: If ε₀ or μ₀ vanishes.
    """
    if params.eps0 == 0 or params.mu0 == 0:
        raise ParameterError("Interior ε₀ and μ₀ must be non-zero")
    calc = surface_calculus(grid, mode)
    k0 = params.k0.value
    k1 = params.k1.value
    scale_e, scale_m = params.ratios()
    grad_r0 = calc.grad_r0
    star_grad_r0 = calc.star @ grad_r0
    rows = 2 * grid.n_nodes

    # ⋆₂(−c ⋆₂ dΓR₀) = c dΓR₀, so c = ik₀/scale gives d*Γj₀ = ik₀r₀.
    c_r = 1j * k0 / scale_e
    c_q = 1j * k0 / scale_m
    j1 = LinearMap(rows, {"r1": 1j * k1 * grad_r0, "r0": -c_r * star_grad_r0})
    m1 = LinearMap(rows, {"q1": 1j * k1 * grad_r0, "q0": -c_q * star_grad_r0})
    j0 = j1.rotated().scaled(scale_e)
    m0 = m1.rotated().scaled(scale_m)

    if mode == 0:
        psi = harmonic_basis(grid).matrix()
        rotated_psi = psi @ clutch.matrix
        j1.blocks["a_j"] = psi
        m1.blocks["a_m"] = psi
        j0.blocks["a_j"] = scale_e * rotated_psi
        m0.blocks["a_m"] = scale_m * rotated_psi
    return {"j1": j1, "m1": m1, "j0": j0, "m0": m0}


def _source_values(src: DebyeSourceSet) -> dict[str, Array | None]:
    return {
        "r0": None if src.r0 is None else src.r0.values,
        "q0": None if src.q0 is None else src.q0.values,
        "r1": src.r1.values,
        "q1": src.q1.values,
        "r": src.r1.values,
        "q": src.q1.values,
        "a": src.a_j,
        "a_j": src.a_j,
        "a_m": src.a_m,
    }


def pec_currents(
    src: DebyeSourceSet, k: Wavenumber | complex, grid: SurfaceGrid
) -> tuple[ModalTangentField, ModalTangentField]:
    """
    Perfect-conductor currents j and m = ⋆₂j.

    R₀ is applied without the mean check; sources from the solver carry
    discretization-level means.
    """
    j_map, m_map = pec_current_maps(grid, src.mode, k)
    values = _source_values(src)
    return (
        ModalTangentField.from_stacked(src.mode, j_map.apply(values)),
        ModalTangentField.from_stacked(src.mode, m_map.apply(values)),
    )


def dielectric_currents(
    src: DebyeSourceSet, params: MaterialParams, clutch: ClutchingMap, grid: SurfaceGrid
) -> tuple[ModalTangentField, ModalTangentField, ModalTangentField, ModalTangentField]:
    """
    Dielectric currents (j₁, m₁, j₀, m₀).

    Raises:
        ParameterError: If ε₀ or μ₀ vanishes.
        ValueError: If interior sources are missing.
    """
    if not src.is_dielectric:
        raise ValueError("Dielectric currents need interior sources r0, q0")
    maps = dielectric_current_maps(grid, src.mode, params, clutch)
    values = _source_values(src)
    fields = [
        ModalTangentField.from_stacked(src.mode, maps[name].apply(values))
        for name in ("j1", "m1", "j0", "m0")
    ]
    return fields[0], fields[1], fields[2], fields[3]


def surface_currents(
    grid: SurfaceGrid,
    k: Wavenumber | complex,
    r: ModalScalar,
    q: ModalScalar,
    potential_j: ModalScalar | None = None,
    potential_m: ModalScalar | None = None,
    a_j: Array | None = None,
    a_m: Array | None = None,
) -> tuple[ModalTangentField, ModalTangentField]:
    """
    Independent currents j = ik dΓR₀r + ⋆₂dΓp_j + Σ a_j ψ and the m analogue.

    The divergence-free parts ⋆₂dΓp and the harmonic parts are free, so
    these are the most general currents consistent with d*Γj = ikr and
    d*Γm = ikq.
    """
    kk = complex(k.value if isinstance(k, Wavenumber) else k)
    mode = r.mode
    calc = surface_calculus(grid, mode)
    psi = harmonic_basis(grid).matrix() if mode == 0 else None

    def build(source: ModalScalar, potential: ModalScalar | None, a: Array | None) -> Array:
        out = 1j * kk * (calc.grad_r0 @ source.values)
        if potential is not None:
            out = out + calc.star @ (calc.grad @ potential.values)
        if a is not None:
            if psi is None:
                raise ValueError("Harmonic coefficients only exist at mode 0")
            out = out + psi @ np.asarray(a, dtype=complex)
        return out

    return (
        ModalTangentField.from_stacked(mode, build(r, potential_j, a_j)),
        ModalTangentField.from_stacked(mode, build(q, potential_m, a_m)),
    )
