"""
Evaluation of the fields generated by Debye sources away from the surface.
"""

from torus_debye.fields.checks import (
    decay_exponent,
    maxwell_residual,
    radiation_profile,
    radiation_residual,
)
from torus_debye.fields.evaluator import (
    EMFieldSample,
    FieldEvaluator,
    Medium,
    NearEvaluationError,
    SurfaceSources,
    dielectric_field_sources,
    pec_field_sources,
)

__all__ = [
    "EMFieldSample",
    "FieldEvaluator",
    "Medium",
    "NearEvaluationError",
    "SurfaceSources",
    "decay_exponent",
    "dielectric_field_sources",
    "maxwell_residual",
    "pec_field_sources",
    "radiation_profile",
    "radiation_residual",
]
