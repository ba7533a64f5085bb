"""
Data models for torus-debye.

This package contains the pydantic models experiment reports are built from.
"""

from torus_debye.models.report import ExperimentKind, ExperimentReport

__all__ = [
    "ExperimentKind",
    "ExperimentReport",
]
