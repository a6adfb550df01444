"""Shared helpers: exact rationals, exact linear algebra and domain errors."""
from utils.rationals import parse_rational, render_rational, to_fraction

__all__ = ['parse_rational', 'render_rational', 'to_fraction']
