"""
Dense modal realizations of the boundary operators.

Scalars act on nodal vectors of length N and tangent fields on stacked
frame components [v_τ; v_θ] of length 2N. With V the vector single layer
in frame components:

    S   single layer                  K₀  ∂/∂n_x of the single layer
    K₁  ⋆₂ dΓ S                       K₂t ⋆₂ (V j)_t,  K₂n n̂·(V j)
    K₃  curlΓ (V m)_t = n̂·curl V m    K₄  n̂ × curl V m (principal value)
    G₀  single layer at k = 0
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from torus_debye.calculus import surface_calculus
from torus_debye.config import QuadratureConfig
from torus_debye.geometry import SurfaceGrid
from torus_debye.kernels import KernelFamily, ModalKernelTable, ModalTableCache, Wavenumber

logger = logging.getLogger(__name__)

_BASE_FAMILIES = (
    KernelFamily.SINGLE_LAYER,
    KernelFamily.NORMAL_DERIVATIVE,
    KernelFamily.VECTOR,
    KernelFamily.DOUBLE_CURL,
)
_DIFFERENCE_FAMILIES = (KernelFamily.SINGLE_LAYER_DIFF, KernelFamily.DOUBLE_CURL_DIFF)

Matrix = NDArray[np.complex128]


def _block(table: ModalKernelTable) -> Matrix:
    c = table.components
    return np.block([[c["tt"], c["tp"]], [c["pt"], c["pp"]]])


@dataclass(frozen=True, eq=False)
class OperatorSet:
    """
    Operator matrices for one mode and wavenumber.

    The difference operators are present only when assembled with
    ``include_difference=True`` (the perfect-conductor B-cycle row).
    """

    mode: int
    wavenumber: Wavenumber
    S: Matrix
    K0: Matrix
    K1: Matrix
    K2t: Matrix
    K2n: Matrix
    K3: Matrix
    K4: Matrix
    G0: Matrix
    V_t: Matrix
    flagged: bool = False
    K1_diff: Matrix | None = None
    K4_diff: Matrix | None = None
    K4_zero: Matrix | None = None

    @property
    def k(self) -> complex:
        """Complex wavenumber value."""
        return self.wavenumber.value

    @property
    def n_nodes(self) -> int:
        """Grid size N."""
        return int(self.S.shape[0])

    @property
    def has_difference(self) -> bool:
        """Whether the difference operators were assembled."""
        return self.K4_diff is not None


def assemble_operators(
    mode: int,
    k: Wavenumber | complex,
    grid: SurfaceGrid,
    config: QuadratureConfig | None = None,
    cache: ModalTableCache | None = None,
    include_difference: bool = False,
) -> OperatorSet:
    """
    Assemble the boundary operators at one mode and wavenumber.

    Args:
        mode: Azimuthal mode n.
        k: Wavenumber.
        grid: Surface grid.
        config: Quadrature settings (ignored when a cache is given).
        cache: Table cache to draw from and fill.
        include_difference: Also assemble (S_k − S_0)/k, (K₄(k) − K₄(0))/k and K₄(0).

    Returns:
        The operator set; `flagged` is set if any table was flagged.
    """
    kk = k if isinstance(k, Wavenumber) else Wavenumber(k)
    tables_cache = cache if cache is not None else ModalTableCache(grid, config)
    families = _BASE_FAMILIES + (_DIFFERENCE_FAMILIES if include_difference else ())
    tables = tables_cache.tables(families, mode, kk)
    zero = Wavenumber(0)
    static_families: tuple[KernelFamily, ...] = (KernelFamily.SINGLE_LAYER,)
    if include_difference:
        static_families += (KernelFamily.DOUBLE_CURL,)
    static = tables_cache.tables(static_families, mode, zero)

    calc = surface_calculus(grid, mode)
    single = tables[KernelFamily.SINGLE_LAYER].matrix()
    vector = tables[KernelFamily.VECTOR].components
    v_t = _block(tables[KernelFamily.VECTOR])
    star_grad = calc.star @ calc.grad

    flagged = any(t.flagged for t in tables.values()) or any(t.flagged for t in static.values())
    extras: dict[str, Matrix] = {}
    if include_difference:
        extras["K1_diff"] = star_grad @ tables[KernelFamily.SINGLE_LAYER_DIFF].matrix()
        extras["K4_diff"] = _block(tables[KernelFamily.DOUBLE_CURL_DIFF])
        extras["K4_zero"] = _block(static[KernelFamily.DOUBLE_CURL])

    logger.debug("Assembled operators at n=%d, k=%s", mode, kk.value)
    return OperatorSet(
        mode=mode,
        wavenumber=kk,
        S=single,
        K0=tables[KernelFamily.NORMAL_DERIVATIVE].matrix(),
        K1=star_grad @ single,
        K2t=calc.star @ v_t,
        K2n=np.hstack([vector["nt"], vector["np"]]),
        K3=calc.curl @ v_t,
        K4=_block(tables[KernelFamily.DOUBLE_CURL]),
        G0=static[KernelFamily.SINGLE_LAYER].matrix(),
        V_t=v_t,
        flagged=flagged,
        **extras,
    )
