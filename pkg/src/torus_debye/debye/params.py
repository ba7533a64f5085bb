"""
Material parameters and wavenumbers.

Region 0 is the interior D, region 1 the exterior Ω. Lossy media follow
the convention ε = ε̃ + iσ/ω.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from torus_debye.kernels import Wavenumber

logger = logging.getLogger(__name__)


class ParameterError(Exception):
    """Material parameters outside the admissible range."""


@dataclass(frozen=True)
class MaterialParams:
    """
    Permittivities, permeabilities and frequency of a two-region problem.

    Attributes:
        eps0: Interior permittivity ε₀.
        mu0: Interior permeability μ₀.
        eps1: Exterior permittivity ε₁.
        mu1: Exterior permeability μ₁.
        omega: Angular frequency ω ≥ 0.
    """

    eps0: complex
    mu0: complex
    eps1: complex
    mu1: complex
    omega: float

    @property
    def k0(self) -> Wavenumber:
        """Interior wavenumber."""
        return Wavenumber.from_material(self.eps0, self.mu0, self.omega)

    @property
    def k1(self) -> Wavenumber:
        """Exterior wavenumber."""
        return Wavenumber.from_material(self.eps1, self.mu1, self.omega)

    @property
    def is_static(self) -> bool:
        """ω = 0."""
        return self.omega == 0

    def validate(self) -> None:
        """
        Check the sign conditions under which the systems are uniquely solvable.

        Raises:
            ParameterError: On zero ε₀ or μ₀, negative Im(ωε) or Im(ωμ),
                non-positive Re(μ₀/ε₀), or a negative frequency.
        """
        if self.omega < 0:
            raise ParameterError(f"Frequency must be non-negative, got {self.omega}")
        if self.eps0 == 0 or self.mu0 == 0:
            raise ParameterError("Interior ε₀ and μ₀ must be non-zero")
        for name, value in (
            ("eps0", self.eps0),
            ("mu0", self.mu0),
            ("eps1", self.eps1),
            ("mu1", self.mu1),
        ):
            if (self.omega * complex(value)).imag < 0:
                raise ParameterError(f"Im(ω·{name}) must be non-negative, got {value}")
        if (complex(self.mu0) / complex(self.eps0)).real <= 0:
            raise ParameterError("Re(μ₀/ε₀) must be positive")

    @classmethod
    def from_conductivity(
        cls,
        eps0: complex,
        mu0: complex,
        eps1: complex,
        mu1: complex,
        omega: float,
        sigma0: float = 0.0,
        sigma1: float = 0.0,
    ) -> MaterialParams:
        """
        Build parameters for conducting media, ε_l = ε̃_l + iσ_l/ω.

        Raises:
            ParameterError: If a conductivity is given at ω = 0.
        """
        if (sigma0 or sigma1) and omega == 0:
            raise ParameterError("Conductivities require ω > 0")
        e0 = complex(eps0) + (1j * sigma0 / omega if sigma0 else 0)
        e1 = complex(eps1) + (1j * sigma1 / omega if sigma1 else 0)
        return material_params(e0, mu0, e1, mu1, omega)

    def ratios(self) -> tuple[complex, complex]:
        """(√(ε₁/ε₀), √(μ₁/μ₀)), the interior-to-exterior current scalings."""
        return (
            complex(np.sqrt(complex(self.eps1) / complex(self.eps0))),
            complex(np.sqrt(complex(self.mu1) / complex(self.mu0))),
        )


def material_params(
    eps0: complex,
    mu0: complex,
    eps1: complex,
    mu1: complex,
    omega: float,
    strict: bool = True,
) -> MaterialParams:
    """
    Create and (by default) validate material parameters.

    Args:
        eps0: Interior permittivity.
        mu0: Interior permeability.
        eps1: Exterior permittivity.
        mu1: Exterior permeability.
        omega: Angular frequency.
        strict: Raise on parameters outside the admissible range.

    Returns:
        The parameters.

    Raises:
        ParameterError: If strict and a sign condition fails.
    """
    params = MaterialParams(
        eps0=complex(eps0), mu0=complex(mu0), eps1=complex(eps1), mu1=complex(mu1), omega=omega
    )
    if strict:
        params.validate()
    else:
        try:
            params.validate()
        except ParameterError as e:
            logger.warning("Material parameters outside the admissible range: %s", e)
    return params
