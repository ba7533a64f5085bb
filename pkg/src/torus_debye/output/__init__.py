"""
Output package for torus-debye.

This package contains formatters that render experiment reports as CSV,
JSON, YAML or a Rich text table.
"""

from torus_debye.output.csv_output import CsvFormatter
from torus_debye.output.formatters import (
    BaseFormatter,
    available_formats,
    get_formatter,
    register_formatter,
)
from torus_debye.output.json_output import JsonFormatter
from torus_debye.output.text_output import TextFormatter
from torus_debye.output.yaml_output import YamlFormatter

__all__ = [
    "BaseFormatter",
    "CsvFormatter",
    "JsonFormatter",
    "TextFormatter",
    "YamlFormatter",
    "available_formats",
    "get_formatter",
    "register_formatter",
]
