"""Tests for rational parsing and rendering."""
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

# Add project root to path
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from utils.rationals import parse_rational, render_rational, to_fraction  # noqa: E402


class TestParseRational:
    """parse_rational accepts integers, quotients and powers on either side."""

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("7", Fraction(7)),
            ("-9/2", Fraction(-9, 2)),
            ("1/10^12", Fraction(1, 10 ** 12)),
            ("2^-5", Fraction(1, 32)),
            ("3^2/2^3", Fraction(9, 8)),
            (" 4 / 6 ", Fraction(2, 3)),
        ],
    )
    def test_valid_literals(self, text, expected):
        assert parse_rational(text) == expected

    @pytest.mark.parametrize("text", ["", "abc", "1/", "1.5", "1/-2"])
    def test_rejects_garbage(self, text):
        with pytest.raises(ValueError):
            parse_rational(text)

    def test_rejects_zero_denominator(self):
        with pytest.raises(ValueError, match="Zero denominator"):
            parse_rational("3/0")


class TestRenderRational:
    def test_lowest_terms_and_sign(self):
        assert render_rational(Fraction(-18, 4)) == "-9/2"
        assert render_rational(Fraction(6, -4)) == "-3/2"

    def test_integers_keep_unit_denominator(self):
        assert render_rational(0) == "0/1"
        assert render_rational(5) == "5/1"

    @given(st.fractions())
    def test_parse_inverts_render(self, value):
        assert parse_rational(render_rational(value)) == value


class TestToFraction:
    def test_coerces_all_inputs(self):
        assert to_fraction(3) == Fraction(3)
        assert to_fraction(Fraction(1, 3)) == Fraction(1, 3)
        assert to_fraction("5/10") == Fraction(1, 2)
