"""
Surface calculus on tori of revolution, one azimuthal mode at a time.
"""

from torus_debye.calculus.fields import ModalScalar, ModalTangentField
from torus_debye.calculus.spectral import (
    differentiation_matrix,
    spectral_derivative,
    spectral_upsample,
)
from torus_debye.calculus.surface import (
    HarmonicBasis,
    MeanZeroError,
    SurfaceCalculus,
    check_mean_zero,
    curl_gamma,
    d_gamma,
    dstar_gamma,
    harmonic_basis,
    laplace_beltrami,
    nyquist_vector,
    r0_apply,
    star2,
    surface_calculus,
    surface_mean,
)

__all__ = [
    "HarmonicBasis",
    "MeanZeroError",
    "ModalScalar",
    "ModalTangentField",
    "SurfaceCalculus",
    "check_mean_zero",
    "curl_gamma",
    "d_gamma",
    "differentiation_matrix",
    "dstar_gamma",
    "harmonic_basis",
    "laplace_beltrami",
    "nyquist_vector",
    "r0_apply",
    "spectral_derivative",
    "spectral_upsample",
    "star2",
    "surface_calculus",
    "surface_mean",
]
