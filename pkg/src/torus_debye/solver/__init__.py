"""
Per-mode assembly and solution of the dielectric and perfect-conductor systems.
"""

from torus_debye.solver.data import BoundaryData, PecBoundaryData
from torus_debye.solver.dielectric import (
    MEAN_PAIRS,
    NYQUIST_PAIRS,
    assemble_dielectric,
    check_guards,
    identity_coefficients,
)
from torus_debye.solver.pec import BRowVariant, assemble_pec
from torus_debye.solver.system import (
    MAX_CONDITION,
    ConditioningError,
    ModalSystem,
    SolverContext,
    SystemKind,
    block_selector,
    condition_number,
    solve,
)

__all__ = [
    "MAX_CONDITION",
    "MEAN_PAIRS",
    "NYQUIST_PAIRS",
    "BRowVariant",
    "BoundaryData",
    "ConditioningError",
    "ModalSystem",
    "PecBoundaryData",
    "SolverContext",
    "SystemKind",
    "assemble_dielectric",
    "assemble_pec",
    "block_selector",
    "check_guards",
    "condition_number",
    "identity_coefficients",
    "solve",
]
