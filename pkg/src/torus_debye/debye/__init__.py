"""
Debye sources, material parameters, clutching maps and the currents they generate.
"""

from torus_debye.debye.currents import (
    LinearMap,
    dielectric_current_maps,
    dielectric_currents,
    pec_current_maps,
    pec_currents,
    surface_currents,
)
from torus_debye.debye.params import MaterialParams, ParameterError, material_params
from torus_debye.debye.sources import ClutchingMap, DebyeSourceSet

__all__ = [
    "ClutchingMap",
    "DebyeSourceSet",
    "LinearMap",
    "MaterialParams",
    "ParameterError",
    "dielectric_current_maps",
    "dielectric_currents",
    "material_params",
    "pec_current_maps",
    "pec_currents",
    "surface_currents",
]
