"""
Generating curves of tori of revolution.

A torus of revolution is swept out by rotating a closed curve
γ(t) = (ρ(t), z(t)), t ∈ [0, 2π), about the z axis. Curves are stored as
truncated Fourier series so values and derivatives are exact and
reproducible bit for bit.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np
import yaml
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, Field, ValidationError, field_validator
from scipy.optimize import minimize_scalar

logger = logging.getLogger(__name__)

# Samples used for the positivity, distance and winding checks.
_DENSE_SAMPLES = 4096


class GeometryError(Exception):
    """Invalid generating curve or surface discretization."""


@dataclass(frozen=True)
class CurveSample:
    """Values and t-derivatives of γ at a set of parameters."""

    t: NDArray[np.float64]
    rho: NDArray[np.float64]
    z: NDArray[np.float64]
    drho: NDArray[np.float64]
    dz: NDArray[np.float64]
    d2rho: NDArray[np.float64]
    d2z: NDArray[np.float64]

    @property
    def speed(self) -> NDArray[np.float64]:
        """|γ'(t)|."""
        return np.hypot(self.drho, self.dz)


def _series(
    cos_coeffs: NDArray[np.float64],
    sin_coeffs: NDArray[np.float64],
    t: NDArray[np.float64],
    derivative: int,
) -> NDArray[np.float64]:
    """Evaluate the `derivative`-th t-derivative of a cosine/sine series."""
    out = np.zeros_like(t)
    if cos_coeffs.size:
        m = np.arange(cos_coeffs.size, dtype=float)
        phase = np.outer(t, m) + derivative * np.pi / 2
        out += np.cos(phase) @ (cos_coeffs * m**derivative)
    if sin_coeffs.size:
        m = np.arange(sin_coeffs.size, dtype=float)
        phase = np.outer(t, m) + derivative * np.pi / 2
        out += np.sin(phase) @ (sin_coeffs * m**derivative)
    return out


@dataclass(frozen=True)
class GeneratingCurve:
    """
    Closed meridian curve given by Fourier coefficients.

    Coefficient lists are indexed by frequency: ``rho_cos[m]`` multiplies
    cos(mt) and ``rho_sin[m]`` multiplies sin(mt) (``rho_sin[0]`` is unused).
    Instances are hashable and serve as cache keys.
    """

    rho_cos: tuple[float, ...]
    rho_sin: tuple[float, ...] = ()
    z_cos: tuple[float, ...] = ()
    z_sin: tuple[float, ...] = ()

    @classmethod
    def from_fourier(
        cls,
        rho_cos: ArrayLike,
        rho_sin: ArrayLike = (),
        z_cos: ArrayLike = (),
        z_sin: ArrayLike = (),
        orient: bool = True,
    ) -> GeneratingCurve:
        """
        Build a validated curve from coefficient lists.

        Args:
            rho_cos: Cosine coefficients of ρ(t).
            rho_sin: Sine coefficients of ρ(t).
            z_cos: Cosine coefficients of z(t).
            z_sin: Sine coefficients of z(t).
            orient: Reverse the parameter if needed so that τ̂ × θ̂ points
                out of the solid torus.

        Returns:
            The curve, oriented clockwise in the (ρ, z) half plane.

        Raises:
            GeometryError: If the curve touches the axis or is not regular.
        """
        def as_tuple(values: ArrayLike) -> tuple[float, ...]:
            arr = np.atleast_1d(np.asarray(values, dtype=float))
            if arr.ndim != 1:
                raise GeometryError("Fourier coefficients must be flat lists")
            return tuple(float(v) for v in arr)

        curve = cls(as_tuple(rho_cos), as_tuple(rho_sin), as_tuple(z_cos), as_tuple(z_sin))
        if not curve.rho_cos:
            raise GeometryError("rho needs at least a constant coefficient")
        curve.validate()
        if orient and curve.signed_area() > 0:
            logger.info("Reversing curve parameter to make the normal point outward")
            curve = curve.reversed()
        return curve

    def reversed(self) -> GeneratingCurve:
        """The same curve traversed with t → −t."""
        return GeneratingCurve(
            self.rho_cos,
            tuple(-v for v in self.rho_sin),
            self.z_cos,
            tuple(-v for v in self.z_sin),
        )

    def evaluate(self, t: ArrayLike) -> CurveSample:
        """Evaluate γ and its first two derivatives at parameters `t`."""
        tt = np.atleast_1d(np.asarray(t, dtype=float))
        rc, rs = np.asarray(self.rho_cos), np.asarray(self.rho_sin)
        zc, zs = np.asarray(self.z_cos), np.asarray(self.z_sin)
        return CurveSample(
            t=tt,
            rho=_series(rc, rs, tt, 0),
            z=_series(zc, zs, tt, 0),
            drho=_series(rc, rs, tt, 1),
            dz=_series(zc, zs, tt, 1),
            d2rho=_series(rc, rs, tt, 2),
            d2z=_series(zc, zs, tt, 2),
        )

    @property
    def center(self) -> tuple[float, float]:
        """Tube center (the constant Fourier terms) in the (ρ, z) plane."""
        z0 = self.z_cos[0] if self.z_cos else 0.0
        return self.rho_cos[0], z0

    @property
    def bandwidth(self) -> int:
        """Highest frequency present in either coordinate."""
        return max(len(self.rho_cos), len(self.rho_sin), len(self.z_cos), len(self.z_sin)) - 1

    @cached_property
    def _dense(self) -> CurveSample:
        t = 2 * np.pi * np.arange(_DENSE_SAMPLES) / _DENSE_SAMPLES
        return self.evaluate(t)

    @property
    def tube_diameter(self) -> float:
        """Radial extent max ρ − min ρ of the meridian curve."""
        return float(self._dense.rho.max() - self._dense.rho.min())

    def validate(self) -> None:
        """Raise GeometryError unless ρ > 0 and |γ'| > 0 everywhere."""
        dense = self._dense
        if dense.rho.min() <= 0:
            raise GeometryError(
                f"Generating curve reaches the axis (min rho = {dense.rho.min():.3g})"
            )
        if dense.speed.min() <= 1e-12:
            raise GeometryError("Generating curve has a stationary point (zero speed)")

    def signed_area(self) -> float:
        """Area enclosed in the (ρ, z) plane, positive when counterclockwise."""
        dense = self._dense
        return float(np.mean(dense.rho * dense.dz) * 2 * np.pi)

    def scaled(self, factor: float) -> GeneratingCurve:
        """Copy of the curve scaled by `factor` about the tube center."""
        if factor <= 0:
            raise GeometryError("Scale factor must be positive")

        def scale(coeffs: tuple[float, ...], keep_constant: bool) -> tuple[float, ...]:
            return tuple(
                c if (m == 0 and keep_constant) else factor * c for m, c in enumerate(coeffs)
            )

        curve = GeneratingCurve(
            scale(self.rho_cos, True),
            scale(self.rho_sin, False),
            scale(self.z_cos, True),
            scale(self.z_sin, False),
        )
        curve.validate()
        return curve

    def winding_number(self, rho: float, z: float) -> int:
        """Winding number of the meridian curve about the point (ρ, z)."""
        dense = self._dense
        angles = np.unwrap(np.arctan2(dense.z - z, dense.rho - rho))
        total = angles[-1] - angles[0]
        total += np.angle(
            np.exp(1j * (np.arctan2(dense.z[0] - z, dense.rho[0] - rho) - angles[-1]))
        )
        return int(np.rint(total / (2 * np.pi)))

    def contains(self, rho: float, z: float) -> bool:
        """Whether the meridian point lies inside the curve."""
        return self.winding_number(rho, z) != 0

    def distance(self, rho: float, z: float) -> float:
        """Euclidean distance from a meridian point to the curve."""
        dense = self._dense
        d2 = (dense.rho - rho) ** 2 + (dense.z - z) ** 2
        i = int(np.argmin(d2))
        step = 2 * np.pi / _DENSE_SAMPLES

        def objective(t: float) -> float:
            s = self.evaluate(t)
            return float((s.rho[0] - rho) ** 2 + (s.z[0] - z) ** 2)

        res = minimize_scalar(
            objective,
            bounds=(dense.t[i] - step, dense.t[i] + step),
            method="bounded",
            options={"xatol": 1e-13},
        )
        return float(np.sqrt(min(float(res.fun), float(d2[i]))))


def reference_torus() -> GeneratingCurve:
    """
    Star-shaped test torus used throughout the experiments.

    ρ(t) = 2 + (1 + 0.2 cos 4t) cos t and z(t) = 2 + (1 + 0.3 sin 4t) sin t,
    expanded into its Fourier coefficients.
    """
    return GeneratingCurve.from_fourier(
        rho_cos=[2.0, 1.0, 0.0, 0.1, 0.0, 0.1],
        z_cos=[2.0, 0.0, 0.0, 0.15, 0.0, -0.15],
        z_sin=[0.0, 1.0],
    )


class FourierPair(BaseModel):
    """Cosine and sine coefficient lists for one coordinate."""

    cos: list[float] = Field(default_factory=list, description="Coefficients of cos(mt).")
    sin: list[float] = Field(default_factory=list, description="Coefficients of sin(mt).")


class GeometryFile(BaseModel):
    """On-disk description of a generating curve."""

    rho: FourierPair = Field(description="Fourier series of the radius ρ(t).")
    z: FourierPair = Field(description="Fourier series of the height z(t).")
    nodes: int | None = Field(
        default=None,
        ge=16,
        description="Suggested number of discretization nodes.",
    )

    class Config:
        """Pydantic model configuration."""

        extra = "forbid"

    @field_validator("nodes")
    @classmethod
    def _even_nodes(cls, value: int | None) -> int | None:
        if value is not None and value % 2:
            raise ValueError("nodes must be even")
        return value

    def to_curve(self) -> GeneratingCurve:
        """Build the oriented curve."""
        return GeneratingCurve.from_fourier(self.rho.cos, self.rho.sin, self.z.cos, self.z.sin)


def load_geometry(path: Path) -> tuple[GeneratingCurve, int | None]:
    """
    Load a geometry YAML file.

    Args:
        path: File with ``rho``/``z`` coefficient blocks and optional ``nodes``.

    Returns:
        The curve and the node count stored in the file (if any).

    Raises:
        FileNotFoundError: If the file does not exist.
        GeometryError: If the file is malformed or describes an invalid curve.
    """
    if not path.exists():
        raise FileNotFoundError(f"Geometry file not found: {path}")
    try:
        with path.open(encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
        parsed = GeometryFile(**data)
    except (yaml.YAMLError, ValidationError, TypeError) as e:
        raise GeometryError(f"Invalid geometry file {path}: {e}") from e
    return parsed.to_curve(), parsed.nodes
