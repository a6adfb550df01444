"""Configuration for the Green's function toolkit."""
from config.logging_setup import configure_logging
from config.settings import DEFAULT_TOLERANCE, acceptance_grid

__all__ = ['configure_logging', 'DEFAULT_TOLERANCE', 'acceptance_grid']
