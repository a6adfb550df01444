"""Enums shared across the Green's function toolkit.

This module defines the string enums used by models, services and the CLI
so that tags written into reports and dumps stay consistent.
"""
from enum import Enum


class Normalization(str, Enum):
    """How a Green table's additive constant is fixed.

    A Green's function is unique only up to a constant; every table carries
    the rule that pinned it down.
    """
    MAX_ZERO = "max-zero"  # Shift so the largest entry is exactly 0
    ANCHORED = "anchored"  # Shift so a chosen (row, col) entry is exactly 0


class CheckStatus(str, Enum):
    """Outcome of a single verification check."""
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"  # Not applicable at these parameters


class ShellKind(str, Enum):
    """Which function of the relative distance a shell sum integrates."""
    LOG = "log"
    POWER = "power"


class OutputFormat(str, Enum):
    """Serialization formats supported by the CLI."""
    JSON = "json"
    CSV = "csv"


class Command(str, Enum):
    """CLI subcommands."""
    GREEN = "green"
    CMATRIX = "cmatrix"
    OPERATOR = "operator"
    SPECTRUM = "spectrum"
    BVALUE = "bvalue"
    VERIFY = "verify"


class GridChoice(str, Enum):
    """Parameter grids the verify command can run."""
    CELL = "cell"  # The single cell given by --p/--f/--m/--k
    ACCEPTANCE = "acceptance"  # The full acceptance grid from config.settings
