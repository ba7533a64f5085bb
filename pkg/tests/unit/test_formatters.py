"""
Unit tests for output formatters.
"""

import json

import pytest
import yaml

from torus_debye.models import ExperimentKind, ExperimentReport
from torus_debye.output.csv_output import CsvFormatter
from torus_debye.output.formatters import available_formats, get_formatter
from torus_debye.output.json_output import JsonFormatter
from torus_debye.output.text_output import TextFormatter
from torus_debye.output.yaml_output import YamlFormatter


@pytest.fixture
def report() -> ExperimentReport:
    """A two-row report with a complex column, an error and a warning."""
    report = ExperimentReport(
        experiment_id="fmt",
        kind=ExperimentKind.CLUTCH_SWEEP,
        config_hash="feed",
        seed=1,
    )
    report.add_row(tc=0.0, omega=1e-4, condition=12.5, eigenvalue=1.0 - 0.25j)
    report.add_row(tc=0.5, omega=1.0, condition=float("inf"), eigenvalue=2.0 + 0j)
    report.errors.append("tc=0.5 singular")
    report.warnings.append("flagged quadrature")
    return report


class TestCsvFormatter:
    """Tests for CsvFormatter."""

    def test_header_and_rows(self, report: ExperimentReport) -> None:
        """Header splits complex columns and rows follow."""
        lines = CsvFormatter().format(report).splitlines()
        assert lines[0] == "tc,omega,condition,eigenvalue_re,eigenvalue_im"
        assert lines[1] == "0.0,0.0001,12.5,1.0,-0.25"
        assert lines[2] == "0.5,1.0,inf,2.0,0.0"

    def test_trailing_comments(self, report: ExperimentReport) -> None:
        """Errors, warnings and provenance close the file."""
        lines = CsvFormatter().format(report).splitlines()
        assert lines[3] == "# error: tc=0.5 singular"
        assert lines[4] == "# warning: flagged quadrature"
        assert lines[-1] == "# provenance: config_hash=feed experiment_id=fmt seed=1"

    def test_deterministic(self, report: ExperimentReport) -> None:
        """The same report always produces the same text."""
        assert CsvFormatter().format(report) == CsvFormatter().format(report)

    def test_booleans_and_missing(self) -> None:
        """Booleans are lowercase and missing cells empty."""
        report = ExperimentReport(experiment_id="b", kind=ExperimentKind.SELFTEST, config_hash="0")
        report.add_row(check="a", passed=True)
        report.add_row(check="b", passed=False, measured=1e-3)
        lines = CsvFormatter().format(report).splitlines()
        assert lines[1] == "a,true,"
        assert lines[2] == "b,false,0.001"


class TestJsonFormatter:
    """Tests for JsonFormatter."""

    def test_valid_json(self, report: ExperimentReport) -> None:
        """Output parses and non-finite floats become strings."""
        data = json.loads(JsonFormatter().format(report))
        assert data["kind"] == "sweep-clutch"
        assert data["columns"][-1] == "eigenvalue_im"
        assert data["rows"][1]["condition"] == "inf"
        assert data["errors"] == ["tc=0.5 singular"]


class TestYamlFormatter:
    """Tests for YamlFormatter."""

    def test_valid_yaml(self, report: ExperimentReport) -> None:
        """Output parses back to the same records."""
        data = yaml.safe_load(YamlFormatter().format(report))
        assert data["experiment_id"] == "fmt"
        assert data["rows"][0]["eigenvalue_re"] == 1.0
        assert data["seed"] == 1


class TestTextFormatter:
    """Tests for TextFormatter."""

    def test_contains_table(self, report: ExperimentReport) -> None:
        """Plain text output lists the columns and provenance."""
        output = TextFormatter(colorize=False).format(report)
        assert "sweep-clutch" in output
        assert "condition" in output
        assert "config_hash=feed" in output
        assert "Errors" in output

    def test_empty_report(self) -> None:
        """Reports without rows say so."""
        report = ExperimentReport(experiment_id="e", kind=ExperimentKind.PEC, config_hash="0")
        assert "No rows." in TextFormatter(colorize=False).format(report)


class TestGetFormatter:
    """Tests for the formatter registry."""

    @pytest.mark.parametrize(
        ("name", "cls"),
        [
            ("csv", CsvFormatter),
            ("json", JsonFormatter),
            ("yaml", YamlFormatter),
            ("text", TextFormatter),
        ],
    )
    def test_builtin(self, name: str, cls: type) -> None:
        """Built-in names map to their formatters."""
        assert isinstance(get_formatter(name), cls)

    def test_available(self) -> None:
        """All built-in formats are registered."""
        assert available_formats() == ["csv", "json", "text", "yaml"]

    def test_unknown(self) -> None:
        """Unknown names raise ValueError."""
        with pytest.raises(ValueError, match="Unknown formatter"):
            get_formatter("xml")
