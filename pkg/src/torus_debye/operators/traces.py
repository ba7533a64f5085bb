"""
Boundary limits of the Debye-source field representation.

With outward n̂ and sign σ = +1 for the exterior limit and −1 for the
interior limit, the scaled traces are

    T_ξ = ⋆₂E_t/√μ = −σ m/2 − K₄m − K₁r + ik K₂t j
    T_η = ⋆₂H_t/√ε = +σ j/2 + K₄j − K₁q + ik K₂t m
    N_ξ = n̂·E/√μ   = +σ r/2 − K₀r + ik K₂n j − K₃m
    N_η = n̂·H/√ε   = +σ q/2 − K₀q + ik K₂n m + K₃j

so that T⁺_ξ − T⁻_ξ = −m (the tangential field jumps by √μ ⋆₂m) and
N⁺_ξ − N⁻_ξ = r. Inputs may be nodal vectors or matrices whose columns
are the images of the unknowns; the result has the same shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from torus_debye.operators.assembly import OperatorSet

Array = NDArray[np.complex128]


class Side(str, Enum):
    """Limit taken from outside (Ω) or inside (D)."""

    EXTERIOR = "exterior"
    INTERIOR = "interior"

    @property
    def sign(self) -> int:
        """+1 outside, −1 inside."""
        return 1 if self is Side.EXTERIOR else -1


@dataclass(frozen=True, eq=False)
class TraceResult:
    """Scaled traces on one side: tangent parts stacked [τ; θ]."""

    side: Side
    t_xi: Array
    t_eta: Array
    n_xi: Array
    n_eta: Array


def traces(
    r: Array,
    q: Array,
    j: Array,
    m: Array,
    ops: OperatorSet,
    side: Side | str,
) -> TraceResult:
    """
    Evaluate the four scaled traces.

    Args:
        r: Electric Debye source.
        q: Magnetic Debye source.
        j: Electric current, stacked.
        m: Magnetic current, stacked.
        ops: Operators at the medium's wavenumber.
        side: Which limit.

    Returns:
        The traces.
    """
    s = Side(side)
    sigma = s.sign
    ik = 1j * ops.k
    return TraceResult(
        side=s,
        t_xi=-0.5 * sigma * m - ops.K4 @ m - ops.K1 @ r + ik * (ops.K2t @ j),
        t_eta=0.5 * sigma * j + ops.K4 @ j - ops.K1 @ q + ik * (ops.K2t @ m),
        n_xi=0.5 * sigma * r - ops.K0 @ r + ik * (ops.K2n @ j) - ops.K3 @ m,
        n_eta=0.5 * sigma * q - ops.K0 @ q + ik * (ops.K2n @ m) + ops.K3 @ j,
    )


def difference_trace(
    r: Array,
    star_w: Array,
    j: Array,
    m: Array,
    ops: OperatorSet,
) -> Array:
    """
    Exterior (T_ξ(k) − T_ξ(0))/k for perfect-conductor currents.

    The currents are j = ik W + j_H and m = ⋆₂j with W = dΓR₀r − ⋆₂dΓR₀q;
    T_ξ(0) keeps only the harmonic and static parts. Every term is formed
    from difference kernels, so nothing cancels as k → 0.

    Args:
        r: Electric Debye source.
        star_w: ⋆₂W = ⋆₂dΓR₀r + dΓR₀q, stacked.
        j: Electric current at k, stacked.
        m: Magnetic current at k, stacked.
        ops: Operators assembled with the difference families.

    Returns:
        The stacked tangent field.

    Raises:
        ValueError: If the difference operators were not assembled.
    """
    if ops.K1_diff is None or ops.K4_diff is None or ops.K4_zero is None:
        raise ValueError("Operator set lacks difference operators")
    return (
        -0.5j * star_w
        - ops.K1_diff @ r
        + 1j * (ops.K2t @ j)
        - ops.K4_diff @ m
        - 1j * (ops.K4_zero @ star_w)
    )
