"""
A-posteriori checks on evaluated fields: Maxwell residuals by finite
differences and the Silver-Müller radiation condition.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from torus_debye.fields.evaluator import FieldEvaluator, Medium, SurfaceSources

Sources = SurfaceSources | Sequence[SurfaceSources]


def _curls(
    evaluator: FieldEvaluator,
    point: NDArray[np.float64],
    sources: Sources,
    medium: Medium,
    step: float,
) -> tuple[NDArray[np.complex128], NDArray[np.complex128]]:
    """Central-difference curl of E and H with step `step`."""
    jac_e = np.zeros((3, 3), dtype=complex)
    jac_h = np.zeros((3, 3), dtype=complex)
    for axis in range(3):
        offset = np.zeros(3)
        offset[axis] = step
        plus = evaluator.evaluate(point + offset, sources, medium)
        minus = evaluator.evaluate(point - offset, sources, medium)
        jac_e[:, axis] = (plus.E - minus.E) / (2 * step)
        jac_h[:, axis] = (plus.H - minus.H) / (2 * step)

    def curl(jac: NDArray[np.complex128]) -> NDArray[np.complex128]:
        return np.array(
            [jac[2, 1] - jac[1, 2], jac[0, 2] - jac[2, 0], jac[1, 0] - jac[0, 1]]
        )

    return curl(jac_e), curl(jac_h)


def maxwell_residual(
    evaluator: FieldEvaluator,
    point: ArrayLike,
    sources: Sources,
    medium: Medium,
    step: float = 1e-3,
) -> float:
    """
    Relative residual of curl E = iωμH and curl H = −iωεE at a point.

    Derivatives are central differences extrapolated from steps h and h/2,
    so the truncation error is O(h⁴). The residual is normalized by
    max(|E|, |H|) · max(1, |k|).

    Args:
        evaluator: Evaluator bound to the source surface.
        point: Cartesian target, at least `step` away from the surface.
        sources: Densities per mode.
        medium: Medium of the region containing the point.
        step: Difference step h.

    Returns:
        The relative residual.
    """
    p = np.asarray(point, dtype=float)
    coarse_e, coarse_h = _curls(evaluator, p, sources, medium, step)
    fine_e, fine_h = _curls(evaluator, p, sources, medium, step / 2)
    curl_e = (4 * fine_e - coarse_e) / 3
    curl_h = (4 * fine_h - coarse_h) / 3

    sample = evaluator.evaluate(p, sources, medium)
    omega = medium.omega
    faraday = np.linalg.norm(curl_e - 1j * omega * medium.mu * sample.H)
    ampere = np.linalg.norm(curl_h + 1j * omega * medium.eps * sample.E)
    scale = max(sample.magnitude, np.finfo(float).tiny) * max(1.0, abs(medium.k))
    return float(max(faraday, ampere) / scale)


def radiation_residual(
    evaluator: FieldEvaluator,
    point: ArrayLike,
    sources: Sources,
    medium: Medium,
) -> float:
    """|iωμ (H × x̂) − ik E| at an exterior point, x̂ = x/|x|."""
    p = np.asarray(point, dtype=float)
    sample = evaluator.evaluate(p, sources, medium)
    direction = p / np.linalg.norm(p)
    k = medium.k.value
    defect = 1j * medium.omega * medium.mu * np.cross(sample.H, direction) - 1j * k * sample.E
    return float(np.linalg.norm(defect))


def radiation_profile(
    evaluator: FieldEvaluator,
    direction: ArrayLike,
    radii: Sequence[float],
    sources: Sources,
    medium: Medium,
) -> NDArray[np.float64]:
    """Radiation residuals along the ray {R x̂ : R in radii}."""
    unit = np.asarray(direction, dtype=float)
    unit = unit / np.linalg.norm(unit)
    return np.array([radiation_residual(evaluator, r * unit, sources, medium) for r in radii])


def decay_exponent(radii: Sequence[float], residuals: Sequence[float]) -> float:
    """
    Least-squares slope of log(residual) against log(R).

    An outgoing field has residuals decaying like R⁻², so the slope of a
    radiating solution is close to −2 (and below −1 in any case).
    """
    r = np.asarray(radii, dtype=float)
    values = np.asarray(residuals, dtype=float)
    if r.size < 2 or r.size != values.size:
        raise ValueError("decay_exponent needs at least two matching radii and residuals")
    if np.any(values <= 0):
        raise ValueError("Residuals must be positive to fit a power law")
    slope, _ = np.polyfit(np.log(r), np.log(values), 1)
    return float(slope)
