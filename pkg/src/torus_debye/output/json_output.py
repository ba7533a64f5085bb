"""
JSON output formatter.
"""

from __future__ import annotations

import json
import math
from typing import Any

from torus_debye.models.report import ExperimentReport
from torus_debye.output.formatters import BaseFormatter, register_formatter


def _finite(value: Any) -> Any:
    # JSON has no inf/nan literals.
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


def report_to_dict(report: ExperimentReport) -> dict[str, Any]:
    """Plain-data form of a report shared by the JSON and YAML formatters."""
    return {
        "experiment_id": report.experiment_id,
        "kind": report.kind.value,
        "config_hash": report.config_hash,
        "seed": report.seed,
        "columns": report.flat_columns(),
        "rows": [{k: _finite(v) for k, v in r.items()} for r in report.records()],
        "notes": report.notes,
        "errors": report.errors,
        "warnings": report.warnings,
    }


@register_formatter("json")
class JsonFormatter(BaseFormatter):
    """
    Format output as JSON.
    """

    def __init__(self, indent: int = 2) -> None:
        """
        Initialize the JSON formatter.

        Args:
            indent: JSON indentation level.
        """
        self.indent = indent

    def format(self, report: ExperimentReport) -> str:
        """Format an experiment report as JSON."""
        return json.dumps(report_to_dict(report), indent=self.indent, default=str) + "\n"
