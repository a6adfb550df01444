"""Parsing and canonical rendering of exact rationals."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction, str]

# "7", "-3/4", "1/10^12", "2^-5"
_RATIONAL_PATTERN = re.compile(
    r"^\s*(?P<num>[+-]?\d+)(?:\^(?P<num_exp>[+-]?\d+))?"
    r"(?:\s*/\s*(?P<den>\d+)(?:\^(?P<den_exp>\d+))?)?\s*$"
)


def parse_rational(text: str) -> Fraction:
    """Parse a rational string such as ``"1/10^12"`` or ``"-9/2"``.

    Args:
        text: Integer, ``num/den`` or either side raised with ``^``.

    Returns:
        The exact value as a Fraction.

    Raises:
        ValueError: If the text is not a rational literal or the denominator is 0.
    """
    match = _RATIONAL_PATTERN.match(text)
    if match is None:
        raise ValueError(f"Not a rational literal: {text!r}")

    num = Fraction(int(match.group("num")))
    if match.group("num_exp") is not None:
        num = num ** int(match.group("num_exp"))

    den = Fraction(1)
    if match.group("den") is not None:
        den = Fraction(int(match.group("den")))
        if match.group("den_exp") is not None:
            den = den ** int(match.group("den_exp"))
    if den == 0:
        raise ValueError(f"Zero denominator in {text!r}")
    return num / den


def render_rational(value: RationalLike) -> str:
    """Render a rational canonically as ``num/den`` (lowest terms, den > 0)."""
    frac = value if isinstance(value, Fraction) else Fraction(value)
    return f"{frac.numerator}/{frac.denominator}"


def to_fraction(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and rational strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return parse_rational(value)
