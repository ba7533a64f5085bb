"""
Azimuthal reduction of kernels on a surface of revolution.

Mode-n kernels are integrals over one period of the azimuthal offset with
a near-singularity at offset zero. Two tools are provided: an adaptive
bisection integrator for scalar kernels, and a fixed composite
Gauss-Legendre rule graded toward zero that is shared by every entry of a
kernel table or field evaluation.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import NDArray

logger = logging.getLogger(__name__)

AzimuthalKernel = Callable[[NDArray[np.float64]], NDArray[np.complex128] | NDArray[np.float64]]

# Width of the uniform outer panels, in radians, before frequency scaling.
_MAX_OUTER_PANEL = np.pi / 8
# Largest (panel half-width) × (frequency) resolved by one panel.
_PANEL_PHASE = 3.0


@lru_cache(maxsize=8)
def _gauss_legendre(order: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


@dataclass(frozen=True)
class AzimuthalEstimate:
    """Result of an adaptive azimuthal integral."""

    value: complex
    error: float
    converged: bool
    evaluations: int


@dataclass(frozen=True, eq=False)
class AzimuthalRule:
    """Composite rule on [−π, π]."""

    nodes: NDArray[np.float64]
    weights: NDArray[np.float64]
    breaks: NDArray[np.float64]
    order: int

    def __len__(self) -> int:
        return int(self.nodes.size)

    def refined(self) -> AzimuthalRule:
        """Same panels, each split in two (used for a-posteriori checks)."""
        mids = 0.5 * (self.breaks[:-1] + self.breaks[1:])
        return _composite(np.sort(np.concatenate([self.breaks, mids])), self.order)

    def phases(self, mode: int) -> NDArray[np.complex128]:
        """Weights times e^{inφ}."""
        return self.weights * np.exp(1j * mode * self.nodes)


def _composite(breaks: NDArray[np.float64], order: int) -> AzimuthalRule:
    x, w = _gauss_legendre(order)
    a, b = breaks[:-1, None], breaks[1:, None]
    nodes = 0.5 * (b - a) * x[None, :] + 0.5 * (a + b)
    weights = 0.5 * (b - a) * w[None, :]
    return AzimuthalRule(
        nodes=nodes.ravel(), weights=weights.ravel(), breaks=breaks, order=order
    )


class AzimuthalIntegrator:
    """
    Integrates kernels of the azimuthal offset against e^{inφ}.

    Args:
        tol: Target relative tolerance.
        max_depth: Maximum number of bisections of a panel.
        panel_order: Gauss-Legendre points per panel.
    """

    def __init__(self, tol: float = 1e-12, max_depth: int = 40, panel_order: int = 16) -> None:
        self.tol = tol
        self.max_depth = max_depth
        self.panel_order = panel_order

    def _panel(self, kernel: AzimuthalKernel, mode: int, a: float, b: float) -> complex:
        x, w = _gauss_legendre(self.panel_order)
        phi = 0.5 * (b - a) * x + 0.5 * (a + b)
        values = np.asarray(kernel(phi)) * np.exp(1j * mode * phi)
        return complex(0.5 * (b - a) * np.dot(w, values))

    def integrate(self, kernel: AzimuthalKernel, mode: int) -> AzimuthalEstimate:
        """
        Adaptive bisection of ∫_{−π}^{π} K(φ) e^{inφ} dφ.

        Panels start at 16 uniform pieces and are bisected until the
        difference between one panel and its two halves is below the
        panel's share of the tolerance. Panels are processed in a fixed
        order, so the result does not depend on scheduling.
        """
        breaks = np.linspace(-np.pi, np.pi, 17)
        coarse = [self._panel(kernel, mode, a, b) for a, b in zip(breaks[:-1], breaks[1:])]
        scale = max(sum(abs(c) for c in coarse), np.finfo(float).tiny)

        total = 0j
        error = 0.0
        converged = True
        evaluations = len(coarse) * self.panel_order
        stack = [(a, b, c, 0) for a, b, c in zip(breaks[:-1], breaks[1:], coarse)]
        stack.reverse()
        while stack:
            a, b, whole, depth = stack.pop()
            mid = 0.5 * (a + b)
            left = self._panel(kernel, mode, a, mid)
            right = self._panel(kernel, mode, mid, b)
            evaluations += 2 * self.panel_order
            diff = abs(left + right - whole)
            allowed = self.tol * scale * (b - a) / (2 * np.pi)
            if diff <= allowed or diff <= 4 * np.finfo(float).eps * abs(left + right):
                total += left + right
                error += diff
            elif depth >= self.max_depth:
                total += left + right
                error += diff
                converged = False
            else:
                stack.append((mid, b, right, depth + 1))
                stack.append((a, mid, left, depth + 1))

        if not converged:
            logger.warning("Azimuthal integral did not reach tolerance %.1e", self.tol)
        return AzimuthalEstimate(
            value=total, error=error, converged=converged, evaluations=evaluations
        )

    def graded_rule(self, mode: int, k_scale: float, min_separation: float) -> AzimuthalRule:
        """
        Composite rule for kernels whose near-singularity sits at ±i·δ.

        Args:
            mode: Azimuthal mode n.
            k_scale: |k| times the largest radius, the kernel's oscillation rate.
            min_separation: Smallest δ over the kernel family (dimensionless).

        Returns:
            Rule with dyadic panels down to δ/2 near φ = 0 and uniform outer
            panels narrow enough for the oscillation of e^{inφ} and e^{ikR}.
        """
        frequency = abs(mode) + k_scale + 1.0
        outer = min(_MAX_OUTER_PANEL, 2 * _PANEL_PHASE / frequency)
        first = max(min(min_separation, outer) / 2, 1e-14)

        inner = [0.0]
        edge = first
        while edge < outer:
            inner.append(edge)
            edge *= 2
        inner.append(outer)
        count = int(np.ceil((np.pi - outer) / outer))
        uniform = np.linspace(outer, np.pi, count + 1)[1:]
        half = np.concatenate([np.asarray(inner), uniform])
        breaks = np.concatenate([-half[::-1], half[1:]])
        return _composite(breaks, self.panel_order)


def azimuthal_modal_integral(
    kernel: AzimuthalKernel, mode: int, tol: float = 1e-12, max_depth: int = 40
) -> AzimuthalEstimate:
    """
    Adaptive ∫ K(Δθ) e^{−inΔθ} dΔθ over one period.

    Δθ is the target azimuth minus the source azimuth, so this is the
    source-azimuth integral with weight e^{inφ} at φ = −Δθ.
    """
    integrator = AzimuthalIntegrator(tol=tol, max_depth=max_depth)
    return integrator.integrate(kernel, -mode)
