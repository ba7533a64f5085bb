"""
The dielectric transmission system.

Unknowns are [r₀ | q₀ | r₁ | q₁] and, at mode 0, the harmonic
coefficients of j_H and m_H. With Ξ = √μ₁T⁺_ξ(k₁) − √μ₀T⁻_ξ(k₀) (which
is ⋆₂ of the tangential E jump) and H = √ε₁T⁺_η − √ε₀T⁻_η the rows are

    t_ξ:  −G₀ curlΓ Ξ                   = −G₀ d*Γ j_in
    t_η:  +G₀ curlΓ H                   = +G₀ d*Γ m_in
    n_ξ:  −ε₁√μ₁N⁺_ξ + ε₀√μ₀N⁻_ξ         = h
    n_η:  μ₁√ε₁N⁺_η − μ₀√ε₀N⁻_η          = f

(curlΓ⋆₂ = d*Γ, so the first two rows compare surface divergences of the
tangential jumps). At mode 0 four rows match the A- and B-circulations
of the tangential jumps, and a rank-one term tied to the surface mean
is added to one scalar block per row. The mode-0 surface curl also
misses the alternating (Nyquist) grid vector, so the tangential rows
get a second rank-one term pinning the Nyquist component of r₁ and q₁.
"""

from __future__ import annotations

import logging

import numpy as np

from torus_debye.calculus import nyquist_vector, surface_calculus
from torus_debye.debye import ClutchingMap, MaterialParams, ParameterError, dielectric_current_maps
from torus_debye.operators import Side, assemble_operators, traces
from torus_debye.solver.data import BoundaryData
from torus_debye.solver.system import ModalSystem, SolverContext, SystemKind, block_selector

logger = logging.getLogger(__name__)

# Scalar block each row is tied to by the rank-one mean term.
MEAN_PAIRS = {"t_xi": "r0", "t_eta": "q0", "n_xi": "r1", "n_eta": "q1"}

# Scalar block whose Nyquist component each tangential row pins at mode 0.
NYQUIST_PAIRS = {"t_xi": "r1", "t_eta": "q1"}


def identity_coefficients(params: MaterialParams) -> dict[tuple[str, str], complex]:
    """
    Leading (identity-part) coefficients of the scalar blocks.

    These are the constants multiplying each scalar source in each row
    once compact terms are dropped; they are nonzero exactly when the
    parameter guards pass.
    """
    sm0, sm1 = np.sqrt(params.mu0), np.sqrt(params.mu1)
    se0, se1 = np.sqrt(params.eps0), np.sqrt(params.eps1)
    return {
        ("t_xi", "r0"): complex(sm0 / 4),
        ("t_xi", "r1"): complex(-sm1 / 4),
        ("t_eta", "q0"): complex(-se0 / 4),
        ("t_eta", "q1"): complex(se1 / 4),
        ("n_xi", "r0"): complex(-params.eps0 * sm0 / 2),
        ("n_xi", "r1"): complex(-params.eps1 * sm1 / 2),
        ("n_eta", "q0"): complex(params.mu0 * se0 / 2),
        ("n_eta", "q1"): complex(params.mu1 * se1 / 2),
    }


def check_guards(params: MaterialParams) -> None:
    """
    Raise ParameterError unless the system is of the second kind.

    Requires μ₀μ₁ε₀ε₁ ≠ 0 and (μ₀ + μ₁)(ε₀ + ε₁) ≠ 0.
    """
    if params.mu0 * params.mu1 * params.eps0 * params.eps1 == 0:
        raise ParameterError("All of ε₀, μ₀, ε₁, μ₁ must be non-zero")
    if (params.mu0 + params.mu1) * (params.eps0 + params.eps1) == 0:
        raise ParameterError("(μ₀ + μ₁)(ε₀ + ε₁) must be non-zero")


def assemble_dielectric(
    mode: int,
    params: MaterialParams,
    clutch: ClutchingMap,
    data: BoundaryData,
    context: SolverContext,
) -> ModalSystem:
    """
    Assemble the dielectric system at one mode.

    Args:
        mode: Azimuthal mode n.
        params: Material parameters and frequency.
        clutch: Clutching map relating interior and exterior currents.
        data: Boundary data of the same mode.
        context: Grid, cycles and kernel cache.

    Returns:
        The assembled system.

    Raises:
        ParameterError: If a parameter guard fails.
        ValueError: If the data belongs to another mode.
    """
    if data.mode != mode:
        raise ValueError(f"Boundary data of mode {data.mode} used for mode {mode}")
    check_guards(params)

    grid = context.grid
    n = grid.n_nodes
    calc = surface_calculus(grid, mode)
    layout = [("r0", n), ("q0", n), ("r1", n), ("q1", n)]
    if mode == 0:
        layout += [("a_j", 2), ("a_m", 2)]

    ops1 = assemble_operators(mode, params.k1, grid, cache=context.cache)
    ops0 = assemble_operators(mode, params.k0, grid, cache=context.cache)
    maps = dielectric_current_maps(grid, mode, params, clutch)
    cols = {name: maps[name].columns(layout) for name in ("j1", "m1", "j0", "m0")}
    sel = {name: block_selector(layout, name) for name in ("r0", "q0", "r1", "q1")}

    outer = traces(sel["r1"], sel["q1"], cols["j1"], cols["m1"], ops1, Side.EXTERIOR)
    inner = traces(sel["r0"], sel["q0"], cols["j0"], cols["m0"], ops0, Side.INTERIOR)

    sm0, sm1 = np.sqrt(params.mu0), np.sqrt(params.mu1)
    se0, se1 = np.sqrt(params.eps0), np.sqrt(params.eps1)
    xi = sm1 * outer.t_xi - sm0 * inner.t_xi
    eta = se1 * outer.t_eta - se0 * inner.t_eta
    g0 = ops1.G0

    blocks = {
        "t_xi": -g0 @ (calc.curl @ xi),
        "t_eta": g0 @ (calc.curl @ eta),
        "n_xi": -params.eps1 * sm1 * outer.n_xi + params.eps0 * sm0 * inner.n_xi,
        "n_eta": params.mu1 * se1 * outer.n_eta - params.mu0 * se0 * inner.n_eta,
    }
    rhs = {
        "t_xi": -g0 @ (calc.div @ data.j_in.stacked()),
        "t_eta": g0 @ (calc.div @ data.m_in.stacked()),
        "n_xi": data.h.values.astype(complex),
        "n_eta": data.f.values.astype(complex),
    }
    rows = [(name, n) for name in ("t_xi", "t_eta", "n_xi", "n_eta")]

    if mode == 0:
        weights = calc.mean_weights
        for row, unknown in MEAN_PAIRS.items():
            blocks[row] = blocks[row] + np.outer(np.ones(n), weights @ sel[unknown])
        alternating = nyquist_vector(n)
        for row, unknown in NYQUIST_PAIRS.items():
            blocks[row] = blocks[row] + np.outer(alternating, alternating / n @ sel[unknown])

        # −⋆₂Ξ and −⋆₂H are the tangential jumps themselves.
        a_row = context.cycles.a_functional(n)
        b_row = context.cycles.b_functional(n)
        jump_e = np.vstack([xi[n:], -xi[:n]])
        jump_h = np.vstack([eta[n:], -eta[:n]])
        blocks["a_xi"] = (a_row @ jump_e)[None, :]
        blocks["b_xi"] = (b_row @ jump_e)[None, :]
        blocks["a_eta"] = (a_row @ jump_h)[None, :]
        blocks["b_eta"] = (b_row @ jump_h)[None, :]
        j_in = data.j_in.stacked()
        m_in = data.m_in.stacked()
        rhs["a_xi"] = np.array([a_row @ j_in])
        rhs["b_xi"] = np.array([b_row @ j_in])
        rhs["a_eta"] = np.array([a_row @ m_in])
        rhs["b_eta"] = np.array([b_row @ m_in])
        rows += [("a_xi", 1), ("b_xi", 1), ("a_eta", 1), ("b_eta", 1)]

    matrix = np.vstack([blocks[name] for name, _ in rows])
    vector = np.concatenate([rhs[name] for name, _ in rows])
    logger.debug(
        "Assembled dielectric system at n=%d, ω=%g: %d unknowns",
        mode,
        params.omega,
        matrix.shape[1],
    )
    return ModalSystem(
        kind=SystemKind.DIELECTRIC,
        mode=mode,
        layout=layout,
        rows=rows,
        matrix=matrix,
        rhs=vector,
        flagged=ops0.flagged or ops1.flagged,
    )
