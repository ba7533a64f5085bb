"""
The perfect-conductor hybrid system.

Unknowns are [r | q] and, at mode 0, the coefficients a of j_H. Rows:

    t:  −G₀ curlΓ (√μ₁T⁺_ξ)  = −G₀ d*Γ e_t
    n:  √ε₁ N⁺_η             = n̂·H

At mode 0 the A-row matches ∮_A E and the B-row matches ∮_B E/k. By
Stokes, ∮_B E = iωμ₁ ∫_S H·ẑ, so the B-row reads

    −√μ₁ 2πρ* [(T⁺_ξ(k) − T⁺_ξ(0))/k]_τ(t*) = i √(μ₁/ε₁) ∫_S H·ẑ dA,

which stays finite as k → 0. T⁺_ξ(0) has zero B-circulation, so
subtracting it changes nothing but removes the 1/k.

As in the dielectric system, mode 0 adds rank-one terms for the surface
means of r and q and for the Nyquist component of r.
"""

from __future__ import annotations

import logging
from typing import Literal

import numpy as np

from torus_debye.calculus import nyquist_vector, surface_calculus
from torus_debye.debye import MaterialParams, ParameterError, pec_current_maps
from torus_debye.kernels import Wavenumber
from torus_debye.operators import Side, assemble_operators, difference_trace, traces
from torus_debye.solver.data import PecBoundaryData
from torus_debye.solver.system import ModalSystem, SolverContext, SystemKind, block_selector

logger = logging.getLogger(__name__)

BRowVariant = Literal["difference", "direct"]


def assemble_pec(
    mode: int,
    params: MaterialParams,
    data: PecBoundaryData,
    context: SolverContext,
    b_row: BRowVariant = "difference",
) -> ModalSystem:
    """
    Assemble the perfect-conductor system at one mode.

    The exterior medium is (ε₁, μ₁); interior parameters are not used.

    Args:
        mode: Azimuthal mode n.
        params: Material parameters and frequency.
        data: Boundary data of the same mode.
        context: Grid, cycles and kernel cache.
        b_row: "difference" builds the B-row from difference kernels;
            "direct" subtracts the k = 0 trace and divides by k.

    Returns:
        The assembled system.

    Raises:
        ParameterError: If ε₁ or μ₁ vanishes, or the direct B-row is requested at k = 0.
        ValueError: If the data belongs to another mode.
    """
    if data.mode != mode:
        raise ValueError(f"Boundary data of mode {data.mode} used for mode {mode}")
    if params.eps1 == 0 or params.mu1 == 0:
        raise ParameterError("Exterior ε₁ and μ₁ must be non-zero")
    k = params.k1
    if mode == 0 and b_row == "direct" and k.is_zero:
        raise ParameterError("The direct B-row divides by k and needs ω > 0")

    grid = context.grid
    n = grid.n_nodes
    calc = surface_calculus(grid, mode)
    layout = [("r", n), ("q", n)]
    if mode == 0:
        layout.append(("a", 2))

    use_difference = mode == 0 and b_row == "difference"
    ops = assemble_operators(
        mode, k, grid, cache=context.cache, include_difference=use_difference
    )
    j_map, m_map = pec_current_maps(grid, mode, k)
    j_cols = j_map.columns(layout)
    m_cols = m_map.columns(layout)
    sel_r = block_selector(layout, "r")
    sel_q = block_selector(layout, "q")
    outer = traces(sel_r, sel_q, j_cols, m_cols, ops, Side.EXTERIOR)

    sm1 = np.sqrt(params.mu1)
    se1 = np.sqrt(params.eps1)
    blocks = {
        "t": -ops.G0 @ (calc.curl @ (sm1 * outer.t_xi)),
        "n": se1 * outer.n_eta,
    }
    rhs = {
        "t": -ops.G0 @ (calc.div @ data.e_t.stacked()),
        "n": data.n_h.values.astype(complex),
    }
    rows = [("t", n), ("n", n)]

    if mode == 0:
        weights = calc.mean_weights
        blocks["t"] = blocks["t"] + np.outer(np.ones(n), weights @ sel_r)
        blocks["n"] = blocks["n"] + np.outer(np.ones(n), weights @ sel_q)
        # The Nyquist grid mode is outside the range of the mode-0 curl.
        alternating = nyquist_vector(n)
        blocks["t"] = blocks["t"] + np.outer(alternating, alternating / n @ sel_r)

        cycles = context.cycles
        # √μ₁ (T_ξ)_θ is E_τ.
        blocks["a"] = (sm1 * (cycles.a_weights @ outer.t_xi[n:]))[None, :]
        rhs["a"] = np.array([cycles.a_circulation(data.e_t.tau)])

        rim = 2 * np.pi * cycles.b_radius
        b = cycles.b_index
        if use_difference:
            star_w = calc.star @ calc.grad_r0 @ sel_r + calc.grad_r0 @ sel_q
            scaled = difference_trace(sel_r, star_w, j_cols, m_cols, ops)
        else:
            static = assemble_operators(mode, Wavenumber(0), grid, cache=context.cache)
            harmonic = np.zeros_like(j_cols)
            harmonic[:, -2:] = j_cols[:, -2:]
            static_m = np.vstack([-harmonic[n:], harmonic[:n]])
            zero_q = np.zeros_like(sel_q)
            at_zero = traces(sel_r, zero_q, harmonic, static_m, static, Side.EXTERIOR)
            scaled = (outer.t_xi - at_zero.t_xi) / k.value
        blocks["b"] = (-sm1 * rim * scaled[b])[None, :]
        rhs["b"] = np.array([1j * np.sqrt(params.mu1 / params.eps1) * data.disk_flux])
        rows += [("a", 1), ("b", 1)]

    matrix = np.vstack([blocks[name] for name, _ in rows])
    vector = np.concatenate([rhs[name] for name, _ in rows])
    logger.debug(
        "Assembled PEC system at n=%d, ω=%g (%s B-row): %d unknowns",
        mode,
        params.omega,
        b_row,
        matrix.shape[1],
    )
    return ModalSystem(
        kind=SystemKind.PEC,
        mode=mode,
        layout=layout,
        rows=rows,
        matrix=matrix,
        rhs=vector,
        flagged=ops.flagged,
    )
