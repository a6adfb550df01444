"""Logging configuration for the CLI and scripts."""
import logging
import sys

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(verbosity: int = 0) -> None:
    """Send log records to stderr; stdout carries only command output.

    Args:
        verbosity: 0 for warnings, 1 for info, 2 or more for debug
    """
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)
