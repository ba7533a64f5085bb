"""
Report formatters, looked up by name.

Each output module registers its formatter class with `register_formatter`;
`get_formatter` imports the built-in modules on first use.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Callable
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from torus_debye.models.report import ExperimentReport


class BaseFormatter(ABC):
    """Renders an `ExperimentReport` to text."""

    @abstractmethod
    def format(self, report: ExperimentReport) -> str:
        """Render the rows, notes and trailers of one report."""


_FORMATTERS: dict[str, type[BaseFormatter]] = {}


def register_formatter(name: str) -> Callable[[type[BaseFormatter]], type[BaseFormatter]]:
    """Class decorator adding a formatter under `name` (later registrations win)."""

    def decorator(cls: type[BaseFormatter]) -> type[BaseFormatter]:
        _FORMATTERS[name] = cls
        return cls

    return decorator


def available_formats() -> list[str]:
    """Registered formatter names, sorted."""
    _load_builtin()
    return sorted(_FORMATTERS)


def get_formatter(name: str) -> BaseFormatter:
    """
    Instantiate the formatter registered as `name`.

    Raises:
        ValueError: For names outside `available_formats()`.
    """
    _load_builtin()
    if name not in _FORMATTERS:
        available = ", ".join(sorted(_FORMATTERS))
        raise ValueError(f"Unknown formatter: {name}. Available: {available}")
    return _FORMATTERS[name]()


def _load_builtin() -> None:
    from torus_debye.output import (  # noqa: F401
        csv_output,
        json_output,
        text_output,
        yaml_output,
    )
