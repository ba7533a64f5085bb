"""
Unit tests for the report model.
"""

import math

import numpy as np
import pytest

from torus_debye.models import ExperimentKind, ExperimentReport


def _report() -> ExperimentReport:
    return ExperimentReport(
        experiment_id="unit",
        kind=ExperimentKind.DIELECTRIC,
        config_hash="abc123",
        seed=7,
    )


class TestExperimentReport:
    """Tests for ExperimentReport."""

    def test_create_empty(self) -> None:
        """A new report has no rows and no errors."""
        report = _report()
        assert report.row_count == 0
        assert not report.has_errors
        assert report.columns == []

    def test_add_row_registers_columns(self) -> None:
        """Columns appear in first-seen order."""
        report = _report()
        report.add_row(mode=0, omega=1.0)
        report.add_row(mode=1, omega=2.0, error=1e-9)
        assert report.columns == ["mode", "omega", "error"]
        assert report.column("error") == [None, 1e-9]

    def test_numpy_scalars_become_plain(self) -> None:
        """numpy scalars are stored as Python values."""
        report = _report()
        report.add_row(n=np.int64(3), x=np.float64(0.5), passed=True)
        row = report.rows[0]
        assert type(row["n"]) is int
        assert type(row["x"]) is float
        assert row["passed"] is True

    def test_unknown_column(self) -> None:
        """Asking for a missing column raises KeyError."""
        with pytest.raises(KeyError):
            _report().column("missing")

    def test_complex_columns_are_split(self) -> None:
        """Complex columns flatten to _re and _im pairs."""
        report = _report()
        report.add_row(mode=0, value=1.0 + 2.0j)
        report.add_row(mode=1, value=None)
        assert report.flat_columns() == ["mode", "value_re", "value_im"]
        rows = report.flat_rows()
        assert rows[0] == [0, 1.0, 2.0]
        assert math.isnan(rows[1][1])

    def test_records(self) -> None:
        """Records are keyed by the flat column names."""
        report = _report()
        report.add_row(k=0.5j)
        assert report.records() == [{"k_re": 0.0, "k_im": 0.5}]

    def test_provenance(self) -> None:
        """Provenance names the hash, experiment and seed."""
        assert _report().provenance() == "config_hash=abc123 experiment_id=unit seed=7"
        report = _report()
        report.seed = None
        assert "seed" not in report.provenance()

    def test_errors(self) -> None:
        """Errors mark the report."""
        report = _report()
        report.errors.append("mode 3 failed")
        assert report.has_errors

    def test_kind_values(self) -> None:
        """Kinds are the subcommand names."""
        assert ExperimentKind("sweep-clutch") is ExperimentKind.CLUTCH_SWEEP
        assert ExperimentKind.SELFTEST.value == "selftest"
