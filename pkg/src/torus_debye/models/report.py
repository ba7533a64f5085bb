"""
Report data models.

Every experiment produces an `ExperimentReport`: a table of rows keyed by
column name, plus provenance and any errors or warnings collected while
running.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Any, Optional, Union

from pydantic import BaseModel, Field

Cell = Union[int, float, complex, str, bool, None]


class ExperimentKind(str, Enum):
    """Which experiment produced a report."""

    DIELECTRIC = "solve-dielectric"
    PEC = "solve-pec"
    CLUTCH_SWEEP = "sweep-clutch"
    ACCURACY_SWEEP = "sweep-accuracy"
    RESONANCE_SCAN = "scan-resonance"
    JUMP_CHECKS = "jump-checks"
    SELFTEST = "selftest"
    GEOMETRY = "show-geometry"


def _plain(value: Any) -> Cell:
    """Convert numpy scalars to the matching Python type."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, complex):
        return complex(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return int(value)
    if hasattr(value, "item"):
        return _plain(value.item())
    return float(value)


def _flatten(value: Cell) -> tuple[Cell, ...]:
    if isinstance(value, complex):
        return value.real, value.imag
    return (value,)


class ExperimentReport(BaseModel):
    """Tabular result of one experiment."""

    experiment_id: str = Field(description="Experiment identifier from the configuration")
    kind: ExperimentKind = Field(description="Experiment that produced the report")
    config_hash: str = Field(description="SHA-256 of the configuration")
    seed: Optional[int] = Field(default=None, description="Random seed, when one was used")
    columns: list[str] = Field(default_factory=list, description="Column names in order")
    rows: list[dict[str, Any]] = Field(default_factory=list, description="One dict per row")
    notes: list[str] = Field(default_factory=list, description="Free-form remarks")
    errors: list[str] = Field(default_factory=list, description="Errors that stopped a cell")
    warnings: list[str] = Field(
        default_factory=list, description="Non-fatal conditions such as flagged quadrature"
    )

    @property
    def row_count(self) -> int:
        """Number of rows."""
        return len(self.rows)

    @property
    def has_errors(self) -> bool:
        """Check if there were any errors."""
        return len(self.errors) > 0

    def add_row(self, **values: Cell) -> None:
        """Append a row, registering new columns in first-seen order."""
        for name in values:
            if name not in self.columns:
                self.columns.append(name)
        self.rows.append({name: _plain(v) for name, v in values.items()})

    def column(self, name: str) -> list[Any]:
        """Values of one column (None where a row lacks it)."""
        if name not in self.columns:
            raise KeyError(name)
        return [row.get(name) for row in self.rows]

    def complex_columns(self) -> set[str]:
        """Columns holding at least one complex value."""
        return {
            name
            for name in self.columns
            if any(isinstance(row.get(name), complex) for row in self.rows)
        }

    def flat_columns(self) -> list[str]:
        """Column names with complex columns split into `<name>_re`, `<name>_im`."""
        split = self.complex_columns()
        out: list[str] = []
        for name in self.columns:
            out.extend([f"{name}_re", f"{name}_im"] if name in split else [name])
        return out

    def flat_rows(self) -> list[list[Cell]]:
        """Rows as lists aligned with `flat_columns`."""
        split = self.complex_columns()
        out: list[list[Cell]] = []
        for row in self.rows:
            cells: list[Cell] = []
            for name in self.columns:
                value = row.get(name)
                if name in split:
                    c = complex(value) if value is not None else complex(math.nan, math.nan)
                    cells.extend(_flatten(c))
                else:
                    cells.append(value)
            out.append(cells)
        return out

    def records(self) -> list[dict[str, Cell]]:
        """Rows as dicts keyed by `flat_columns` (JSON and YAML friendly)."""
        names = self.flat_columns()
        return [dict(zip(names, cells)) for cells in self.flat_rows()]

    def provenance(self) -> str:
        """One-line provenance summary."""
        parts = [f"config_hash={self.config_hash}", f"experiment_id={self.experiment_id}"]
        if self.seed is not None:
            parts.append(f"seed={self.seed}")
        return " ".join(parts)
