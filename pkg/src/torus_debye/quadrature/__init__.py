"""
Quadrature: Alpert corrections in t and azimuthal reduction in θ.
"""

from torus_debye.quadrature.alpert import (
    AlpertRule,
    AlpertStencil,
    QuadratureConfigError,
    alpert_integrate,
    alpert_rule,
    trig_interpolation_rows,
)
from torus_debye.quadrature.azimuthal import (
    AzimuthalEstimate,
    AzimuthalIntegrator,
    AzimuthalRule,
    azimuthal_modal_integral,
)

__all__ = [
    "AlpertRule",
    "AlpertStencil",
    "AzimuthalEstimate",
    "AzimuthalIntegrator",
    "AzimuthalRule",
    "QuadratureConfigError",
    "alpert_integrate",
    "alpert_rule",
    "azimuthal_modal_integral",
    "trig_interpolation_rows",
]
