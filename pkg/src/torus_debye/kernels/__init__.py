"""
Helmholtz kernels and their azimuthally reduced Nyström tables.
"""

from torus_debye.kernels.green import (
    KernelDomainError,
    Wavenumber,
    difference_kernel,
    difference_radial_derivative,
    green,
    green_diff_over_k,
    green_grad,
    green_kernel,
    green_normal_deriv,
    green_radial_derivative,
)
from torus_debye.kernels.modal import (
    FAMILY_COMPONENTS,
    KernelFamily,
    ModalKernelTable,
    ModalTableBuilder,
    ModalTableCache,
    build_modal_table,
    evaluate_components,
)

__all__ = [
    "FAMILY_COMPONENTS",
    "KernelDomainError",
    "KernelFamily",
    "ModalKernelTable",
    "ModalTableBuilder",
    "ModalTableCache",
    "Wavenumber",
    "build_modal_table",
    "difference_kernel",
    "difference_radial_derivative",
    "evaluate_components",
    "green",
    "green_diff_over_k",
    "green_grad",
    "green_kernel",
    "green_normal_deriv",
    "green_radial_derivative",
]
