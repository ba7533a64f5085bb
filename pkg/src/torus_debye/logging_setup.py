"""
Logging configuration for the torus-debye CLI.

Library modules only create loggers; handlers are installed here, once,
by the command-line entry point.
"""

from __future__ import annotations

import logging

from rich.console import Console
from rich.logging import RichHandler

PACKAGE_LOGGER = "torus_debye"


def configure_logging(verbose: bool = False, console: Console | None = None) -> logging.Logger:
    """
    Install a Rich handler on the package logger.

    Calling it again replaces the handler instead of adding a second one.

    Args:
        verbose: Log at DEBUG instead of INFO.
        console: Console to log to; stderr when unset.

    Returns:
        The package logger.
    """
    logger = logging.getLogger(PACKAGE_LOGGER)
    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)

    handler = RichHandler(
        console=console or Console(stderr=True),
        show_path=verbose,
        rich_tracebacks=verbose,
        markup=False,
    )
    handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%X]"))
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)
    logger.propagate = False
    return logger
