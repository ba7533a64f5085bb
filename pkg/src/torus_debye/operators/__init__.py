"""
Boundary operators and trace formulas, one azimuthal mode at a time.
"""

from torus_debye.operators.assembly import OperatorSet, assemble_operators
from torus_debye.operators.traces import Side, TraceResult, difference_trace, traces

__all__ = [
    "OperatorSet",
    "Side",
    "TraceResult",
    "assemble_operators",
    "difference_trace",
    "traces",
]
