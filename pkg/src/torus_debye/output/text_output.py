"""
Human-readable text output formatter.
"""

from __future__ import annotations

from io import StringIO

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from torus_debye.models.report import Cell, ExperimentReport
from torus_debye.output.formatters import BaseFormatter, register_formatter


def _cell(value: Cell) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


@register_formatter("text")
class TextFormatter(BaseFormatter):
    """
    Format output as a Rich table.
    """

    def __init__(self, colorize: bool = True) -> None:
        """
        Initialize the text formatter.

        Args:
            colorize: Whether to use colors in output.
        """
        self.colorize = colorize

    def format(self, report: ExperimentReport) -> str:
        """Format an experiment report as text."""
        output = StringIO()
        console = Console(file=output, force_terminal=self.colorize, width=160)

        console.print(
            Panel.fit(
                f"[bold]torus-debye[/bold]  {report.kind.value}\n{report.experiment_id}",
                border_style="blue",
            )
        )

        if report.rows:
            table = Table(show_header=True, header_style="bold")
            for name in report.flat_columns():
                table.add_column(name, justify="right")
            for cells in report.flat_rows():
                table.add_row(*(_cell(c) for c in cells))
            console.print(table)
        else:
            console.print("[dim]No rows.[/dim]")

        for note in report.notes:
            console.print(f"[dim]{note}[/dim]")
        if report.errors:
            console.print("[bold red]Errors[/bold red]")
            for error in report.errors:
                console.print(f"  {error}")
        if report.warnings:
            console.print("[bold yellow]Warnings[/bold yellow]")
            for warning in report.warnings:
                console.print(f"  {warning}")
        console.print(f"[dim]{report.provenance()}[/dim]")
        return output.getvalue()
