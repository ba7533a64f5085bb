"""
Alpert hybrid Gauss-trapezoidal corrections for log-singular periodic integrands.

For an integrand φ(t) log|t − t₀| + ψ(t), the trapezoid rule is kept on
grid nodes at least `skip` steps away from t₀. The remaining nodes are
replaced by auxiliary points t₀ ± x_k h with weights w_k h, chosen so
that the combined rule is exact, to leading order in h, on even
polynomials and even polynomials times log|x| of degree below the
rule order.

The offsets x_k are fixed Chebyshev points on (0, skip). The weights
solve the moment system, whose right-hand sides are the finite sums
over the dropped nodes plus the zeta-function terms of the generalized
Euler-Maclaurin expansion.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np
from numpy.polynomial import Chebyshev, Polynomial
from numpy.typing import NDArray
from scipy.linalg import solve
from scipy.special import zeta

logger = logging.getLogger(__name__)

# order -> (skip, number of auxiliary offsets)
_RULE_SHAPES: dict[int, tuple[int, int]] = {8: (5, 8), 16: (10, 16)}

KernelEvaluator = Callable[[NDArray[np.float64]], NDArray[np.complex128]]


class QuadratureConfigError(Exception):
    """Quadrature rule cannot be applied with the requested parameters."""


def _zeta_prime_negative_even(p: int) -> float:
    """ζ'(−2p) for p ≥ 0."""
    if p == 0:
        return -0.5 * float(np.log(2 * np.pi))
    return float((-1) ** p * factorial(2 * p) * zeta(2 * p + 1) / (2 * (2 * np.pi) ** (2 * p)))


@dataclass(frozen=True, eq=False)
class AlpertRule:
    """
    Tabulated correction for one order.

    Attributes:
        order: Nominal convergence order (8 or 16).
        skip: Grid nodes with circular distance below this are dropped.
        offsets: Auxiliary offsets x_k in units of h (one side).
        weights: Auxiliary weights w_k in units of h (one side).
    """

    order: int
    skip: int
    offsets: NDArray[np.float64]
    weights: NDArray[np.float64]

    @property
    def min_nodes(self) -> int:
        """Smallest grid the stencil fits on."""
        return 4 * self.skip

    def check_nodes(self, n_nodes: int) -> None:
        """Raise QuadratureConfigError if N is too small for the stencil."""
        if n_nodes < self.min_nodes:
            raise QuadratureConfigError(
                f"Order-{self.order} rule needs at least {self.min_nodes} nodes, got {n_nodes}"
            )

    def far_mask(self, n_nodes: int) -> NDArray[np.bool_]:
        """Mask over node offsets j − i (mod N) kept by the trapezoid part."""
        offset = np.arange(n_nodes)
        circular = np.minimum(offset, n_nodes - offset)
        return circular >= self.skip

    def stencil(self, n_nodes: int) -> AlpertStencil:
        """Geometry-free stencil data for a grid of N nodes."""
        self.check_nodes(n_nodes)
        h = 2 * np.pi / n_nodes
        shifts = np.concatenate([self.offsets, -self.offsets]) * h
        weights = np.concatenate([self.weights, self.weights]) * h
        return AlpertStencil(
            n_nodes=n_nodes,
            far_mask=self.far_mask(n_nodes),
            shifts=shifts,
            weights=weights,
            interpolation=trig_interpolation_rows(n_nodes, shifts),
        )


@dataclass(frozen=True, eq=False)
class AlpertStencil:
    """
    Rule data for target node 0; other targets use `np.roll`.

    ``interpolation[k] @ f`` is the trigonometric interpolant of nodal
    values f at parameter ``shifts[k]``.
    """

    n_nodes: int
    far_mask: NDArray[np.bool_]
    shifts: NDArray[np.float64]
    weights: NDArray[np.float64]
    interpolation: NDArray[np.float64]

    def far_mask_for(self, target: int) -> NDArray[np.bool_]:
        """Far-node mask for target node `target`."""
        return np.roll(self.far_mask, target)

    def interpolation_for(self, target: int) -> NDArray[np.float64]:
        """Interpolation rows for auxiliary points around `target`."""
        return np.roll(self.interpolation, target, axis=1)


def trig_interpolation_rows(n_nodes: int, points: NDArray[np.float64]) -> NDArray[np.float64]:
    """
    Rows P(u − t_j) of the band-limited interpolant on N equispaced nodes.

    For even N, P(u) = sin(Nu/2) / (N tan(u/2)), with the Nyquist term
    split evenly; P(0) = 1.
    """
    t = 2 * np.pi * np.arange(n_nodes) / n_nodes
    u = np.asarray(points, dtype=float)[:, None] - t[None, :]
    half = np.sin(u / 2)
    on_node = np.abs(half) < 1e-14
    safe = np.where(on_node, 1.0, u)
    rows = np.sin(n_nodes * safe / 2) * np.cos(safe / 2) / (n_nodes * np.sin(safe / 2))
    return np.where(on_node, 1.0, rows)


@lru_cache(maxsize=None)
def alpert_rule(order: int) -> AlpertRule:
    """
    Build (once) the correction rule of the given order.

    Args:
        order: 8 or 16.

    Returns:
        The rule.

    Raises:
        QuadratureConfigError: For unsupported orders.
    """
    if order not in _RULE_SHAPES:
        raise QuadratureConfigError(f"Unsupported Alpert order {order}; use 8 or 16")
    skip, count = _RULE_SHAPES[order]
    half = count // 2

    k = np.arange(1, count + 1)
    x = skip * (1 - np.cos(np.pi * (k - 0.5) / count)) / 2
    dropped = np.arange(1, skip, dtype=float)

    # Test functions: shifted Chebyshev polynomials in (x/skip)², alone and times log x.
    matrix = np.empty((count, count))
    rhs = np.empty(count)
    for p in range(half):
        basis = Chebyshev.basis(p, domain=[0, 1])
        mono = basis.convert(kind=Polynomial).coef

        def phi(v: NDArray[np.float64], basis: Chebyshev = basis) -> NDArray[np.float64]:
            return np.asarray(basis((v / skip) ** 2))

        matrix[p] = phi(x)
        rhs[p] = 0.5 * float(phi(np.zeros(1))[0]) + float(np.sum(phi(dropped)))

        matrix[half + p] = phi(x) * np.log(x)
        zeta_part = sum(
            c * skip ** (-2 * q) * _zeta_prime_negative_even(q) for q, c in enumerate(mono)
        )
        rhs[half + p] = float(np.sum(phi(dropped) * np.log(dropped))) + zeta_part

    weights = solve(matrix, rhs)
    logger.debug("Built order-%d Alpert rule (skip %d, %d offsets)", order, skip, count)
    return AlpertRule(order=order, skip=skip, offsets=x, weights=np.asarray(weights))


def alpert_integrate(
    samples: NDArray[np.complex128] | NDArray[np.float64],
    singular_index: int,
    rule: AlpertRule,
    kernel_evaluator: KernelEvaluator,
) -> complex:
    """
    Integrate K(t₀, t) f(t) over one period, K log-singular at t₀.

    Args:
        samples: Nodal values f(t_j) on N equispaced nodes.
        singular_index: Index of t₀ among the nodes.
        rule: Correction rule.
        kernel_evaluator: Maps absolute parameters t to K(t₀, t).

    Returns:
        The corrected trapezoid approximation.

    Raises:
        QuadratureConfigError: If N is too small for the rule.
    """
    f = np.asarray(samples)
    n = f.size
    stencil = rule.stencil(n)
    h = 2 * np.pi / n
    t = h * np.arange(n)

    far = stencil.far_mask_for(singular_index)
    total = h * np.sum(kernel_evaluator(t[far]) * f[far])

    aux_t = t[singular_index] + stencil.shifts
    aux_f = stencil.interpolation_for(singular_index) @ f
    total += np.sum(stencil.weights * kernel_evaluator(aux_t) * aux_f)
    return complex(total)
