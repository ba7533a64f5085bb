"""
Command-line interface for torus-debye.

This module provides the CLI using the Click framework: one subcommand per
experiment, shared flags that override the loaded configuration, a rich
progress bar while the experiment runs, and report output through the
formatter registry.
"""

from __future__ import annotations

import sys
from collections.abc import Callable
from functools import wraps
from pathlib import Path
from typing import Any, Optional

import click
from rich.console import Console
from rich.progress import (
    BarColumn,
    Progress,
    SpinnerColumn,
    TaskProgressColumn,
    TextColumn,
    TimeElapsedColumn,
    TimeRemainingColumn,
)

from torus_debye import __version__
from torus_debye.config import ExperimentConfig, find_config_file, load_config
from torus_debye.logging_setup import configure_logging
from torus_debye.models import ExperimentReport

console = Console(stderr=True)

SELFTEST_NODES = 100

ProgressFn = Callable[[int, int, str], None]
Runner = Callable[[ExperimentConfig, ProgressFn], ExperimentReport]


def parse_modes(value: str) -> list[int]:
    """
    Parse a mode selection: ``a..b`` (inclusive), ``n`` or ``a,b,c``.

    Raises:
        click.BadParameter: If the value is malformed or the range is empty.
    """
    text = value.strip()
    try:
        if ".." in text:
            start, stop = (int(part) for part in text.split("..", 1))
            if stop < start:
                raise click.BadParameter(f"empty mode range {value}")
            return list(range(start, stop + 1))
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise click.BadParameter(f"invalid mode selection {value!r}") from e


def parse_floats(value: str) -> list[float]:
    """Parse a comma-separated list of numbers."""
    try:
        values = [float(part) for part in value.split(",") if part.strip()]
    except ValueError as e:
        raise click.BadParameter(f"invalid number list {value!r}") from e
    if not values:
        raise click.BadParameter("expected at least one value")
    return values


def apply_overrides(config: ExperimentConfig, **overrides: Any) -> ExperimentConfig:
    """
    Return a copy of `config` with command-line flags applied.

    Only flags that were given (not None) are applied; fields the user never
    set stay unset, so a geometry file's own node count is still honoured.
    """
    data = config.model_dump(exclude_unset=True)
    targets = {
        "geometry": ("geometry", "file"),
        "nodes": ("geometry", "nodes"),
        "order": ("quadrature", "order"),
        "modes": ("sweep", "modes"),
        "omegas": ("sweep", "omegas"),
        "tc": ("sweep", "tc"),
        "out": ("output", "path"),
        "output_format": ("output", "format"),
    }
    for name, value in overrides.items():
        if value is None:
            continue
        section, key = targets[name]
        data.setdefault(section, {})[key] = value
    return ExperimentConfig.model_validate(data)


def experiment_options(command: Callable[..., None]) -> Callable[..., None]:
    """Attach the flags shared by every experiment subcommand."""
    options = [
        click.option(
            "--geometry",
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            help="Geometry YAML file (default: the reference torus).",
        ),
        click.option(
            "--out",
            "-o",
            type=click.Path(dir_okay=False, path_type=Path),
            help="Output file path. If not specified, prints to stdout.",
        ),
        click.option(
            "--format",
            "-f",
            "output_format",
            type=click.Choice(["csv", "json", "yaml", "text"]),
            help="Output format (default: csv).",
        ),
        click.option("--modes", help="Azimuthal modes, as a..b, n or a,b,c."),
        click.option("--omega-list", help="Comma-separated angular frequencies."),
        click.option("--tc", type=float, help="Clutching parameter t_c."),
        click.option("--order", type=click.Choice(["8", "16"]), help="Alpert correction order."),
        click.option("--nodes", type=int, help="Nodes N on the generating curve (even)."),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _resolve_config(
    ctx: click.Context,
    geometry: Optional[Path],
    out: Optional[Path],
    output_format: Optional[str],
    modes: Optional[str],
    omega_list: Optional[str],
    tc: Optional[float],
    order: Optional[str],
    nodes: Optional[int],
) -> ExperimentConfig:
    config: ExperimentConfig = ctx.obj["config"]
    try:
        return apply_overrides(
            config,
            geometry=geometry,
            nodes=nodes,
            order=int(order) if order is not None else None,
            modes=parse_modes(modes) if modes is not None else None,
            omegas=parse_floats(omega_list) if omega_list is not None else None,
            tc=tc,
            out=out,
            output_format=output_format,
        )
    except click.BadParameter:
        raise
    except Exception as e:
        console.print(f"[red]Error:[/red] {e}")
        raise click.Abort() from e


def _emit(report: ExperimentReport, config: ExperimentConfig) -> None:
    from torus_debye.output.formatters import get_formatter

    formatter = get_formatter(config.output.format)
    formatted_output = formatter.format(report)
    output = config.output.path
    if output:
        output.write_text(formatted_output, encoding="utf-8")
        console.print(f"[green]Results written to:[/green] {output}")
    else:
        sys.stdout.write(formatted_output)
        sys.stdout.flush()


def _run(ctx: click.Context, runner: Runner, config: ExperimentConfig) -> ExperimentReport:
    verbose: bool = ctx.obj.get("verbose", False)
    try:
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TaskProgressColumn(),
            TimeElapsedColumn(),
            TimeRemainingColumn(),
            console=console,
            transient=True,
        ) as progress:
            task = progress.add_task("Initializing...", total=None)

            def update_progress(current: int, total: int, description: str) -> None:
                progress.update(task, completed=current, total=total, description=description)

            report = runner(config, update_progress)
        _emit(report, config)
    except Exception as e:
        console.print(f"[red]Error:[/red] {e}")
        if verbose:
            import traceback

            console.print(traceback.format_exc())
        raise click.Abort() from e

    for message in report.errors:
        console.print(f"[yellow]Failed:[/yellow] {message}")
    return report


def experiment_command(name: str) -> Callable[[Callable[[], Runner]], click.Command]:
    """
    Turn a function returning a runner into a subcommand with shared flags.

    The decorated function imports and returns the runner to execute; its
    docstring becomes the command help.
    """

    def decorator(factory: Callable[[], Runner]) -> click.Command:
        @wraps(factory)
        def command(ctx: click.Context, **flags: Any) -> None:
            config = _resolve_config(ctx, **flags)
            _run(ctx, factory(), config)

        return cli.command(name)(click.pass_context(experiment_options(command)))

    return decorator


@click.group()
@click.version_option(version=__version__, prog_name="torus-debye")
@click.option(
    "--config",
    "-c",
    type=click.Path(exists=True, path_type=Path),
    help="Path to configuration file (default: .torus-debye.yaml if present).",
)
@click.option(
    "--verbose",
    "-v",
    is_flag=True,
    help="Enable debug logging and tracebacks.",
)
@click.pass_context
def cli(ctx: click.Context, config: Optional[Path], verbose: bool) -> None:
    """torus-debye - Debye-source Maxwell solver for tori of revolution."""
    ctx.ensure_object(dict)
    configure_logging(verbose, console)
    ctx.obj["verbose"] = verbose
    path = config or find_config_file(Path.cwd())
    try:
        ctx.obj["config"] = load_config(path)
    except (FileNotFoundError, ValueError) as e:
        console.print(f"[red]Error:[/red] {e}")
        raise click.Abort() from e


@experiment_command("solve-dielectric")
def solve_dielectric() -> Runner:
    """Solve manufactured dielectric problems and report field errors."""
    from torus_debye.harness import run_manufactured

    return run_manufactured


@experiment_command("solve-pec")
def solve_pec() -> Runner:
    """Solve manufactured perfect-conductor problems."""
    from torus_debye.harness import run_pec

    return run_pec


@experiment_command("sweep-clutch")
def sweep_clutch() -> Runner:
    """Condition numbers over clutching parameters and low frequencies."""
    from torus_debye.harness import run_clutch_sweep

    return run_clutch_sweep


@experiment_command("sweep-accuracy")
def sweep_accuracy() -> Runner:
    """Manufactured-solution error against frequency."""
    from torus_debye.harness import run_accuracy_sweep

    return run_accuracy_sweep


@experiment_command("scan-resonance")
def scan_resonance() -> Runner:
    """Condition numbers over a frequency grid, per mode."""
    from torus_debye.harness import run_resonance_scan

    return run_resonance_scan


@experiment_command("jump-checks")
def jump_checks() -> Runner:
    """Compare discrete one-sided traces with extrapolated fields."""
    from torus_debye.harness import run_jump_checks

    def runner(cfg: ExperimentConfig, progress: ProgressFn) -> ExperimentReport:
        return run_jump_checks(cfg, progress=progress)

    return runner


@cli.command("selftest")
@experiment_options
@click.pass_context
def selftest_command(ctx: click.Context, **flags: Any) -> None:
    """Run the invariant checks of every layer (N = 100 unless set)."""
    from torus_debye.harness import selftest

    base: ExperimentConfig = ctx.obj["config"]
    geometry = base.geometry
    defaults = flags["nodes"] is None and flags["geometry"] is None and geometry.file is None
    if defaults and "nodes" not in geometry.model_fields_set:
        flags["nodes"] = SELFTEST_NODES
    config = _resolve_config(ctx, **flags)
    report = _run(ctx, selftest, config)
    failed = [row for row in report.rows if not row["passed"]]
    if failed:
        console.print(f"[red]{len(failed)} of {report.row_count} checks failed[/red]")
        ctx.exit(1)
    console.print(f"[green]All {report.row_count} checks passed[/green]")


@cli.command("show-geometry")
@click.argument(
    "geometry",
    required=False,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)
@click.option("--nodes", type=int, help="Nodes N on the generating curve (even).")
@click.option(
    "--format",
    "-f",
    "output_format",
    type=click.Choice(["csv", "json", "yaml", "text"]),
    default="text",
    help="Output format (default: text).",
)
@click.pass_context
def show_geometry(
    ctx: click.Context, geometry: Optional[Path], nodes: Optional[int], output_format: str
) -> None:
    """Print the grid and cycle summary of a geometry file."""
    from torus_debye.harness import geometry_summary

    base: ExperimentConfig = ctx.obj["config"]
    try:
        config = apply_overrides(base, geometry=geometry, nodes=nodes, output_format=output_format)
    except Exception as e:
        console.print(f"[red]Error:[/red] {e}")
        raise click.Abort() from e
    _run(ctx, lambda cfg, _progress: geometry_summary(cfg), config)


def main() -> None:
    """Main entry point for the CLI."""
    cli(obj={})
