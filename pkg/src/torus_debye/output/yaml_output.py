"""
YAML output formatter.
"""

from __future__ import annotations

import yaml

from torus_debye.models.report import ExperimentReport
from torus_debye.output.formatters import BaseFormatter, register_formatter
from torus_debye.output.json_output import report_to_dict


@register_formatter("yaml")
class YamlFormatter(BaseFormatter):
    """
    Format output as YAML.
    """

    def format(self, report: ExperimentReport) -> str:
        """Format an experiment report as YAML."""
        return yaml.safe_dump(
            report_to_dict(report), default_flow_style=False, sort_keys=False, allow_unicode=True
        )
