"""
Experiment drivers: manufactured solutions, sweeps, jump checks and self-tests.
"""

from torus_debye.harness.common import (
    HarnessError,
    ProgressCallback,
    build_context,
    build_grid,
    build_params,
    geometry_summary,
    new_report,
)
from torus_debye.harness.jumps import extrapolate_to_zero, run_jump_checks
from torus_debye.harness.manufactured import (
    DielectricCell,
    ManufacturedProblem,
    PecCell,
    build_manufactured_problem,
    run_manufactured,
    run_pec,
    solve_dielectric_cell,
    solve_pec_cell,
)
from torus_debye.harness.selftest import register_check, registered_checks, selftest
from torus_debye.harness.sweeps import (
    dielectric_condition,
    run_accuracy_sweep,
    run_clutch_sweep,
    run_resonance_scan,
)

__all__ = [
    "DielectricCell",
    "HarnessError",
    "ManufacturedProblem",
    "PecCell",
    "ProgressCallback",
    "build_context",
    "build_grid",
    "build_manufactured_problem",
    "build_params",
    "dielectric_condition",
    "extrapolate_to_zero",
    "geometry_summary",
    "new_report",
    "register_check",
    "registered_checks",
    "run_accuracy_sweep",
    "run_clutch_sweep",
    "run_jump_checks",
    "run_manufactured",
    "run_pec",
    "run_resonance_scan",
    "selftest",
    "solve_dielectric_cell",
    "solve_pec_cell",
]
