"""
CSV output formatter.

Complex columns become `<name>_re,<name>_im` pairs. Floats are written
with `repr`, so the same report always produces the same bytes.
"""

from __future__ import annotations

import csv
from io import StringIO

from torus_debye.models.report import Cell, ExperimentReport
from torus_debye.output.formatters import BaseFormatter, register_formatter


def _cell(value: Cell) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


@register_formatter("csv")
class CsvFormatter(BaseFormatter):
    """
    Format output as CSV with a trailing provenance comment.
    """

    def format(self, report: ExperimentReport) -> str:
        """Format an experiment report as CSV."""
        output = StringIO()
        writer = csv.writer(output, lineterminator="\n")
        writer.writerow(report.flat_columns())
        for cells in report.flat_rows():
            writer.writerow([_cell(c) for c in cells])
        for error in report.errors:
            output.write(f"# error: {error}\n")
        for warning in report.warnings:
            output.write(f"# warning: {warning}\n")
        output.write(f"# provenance: {report.provenance()}\n")
        return output.getvalue()
