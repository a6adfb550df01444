"""Tests for the D log d and D d^n closed forms and the shell-sum evaluator."""
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add project root to path
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from green_enums import ShellKind  # noqa: E402
from models import Params, ShellSumSpec  # noqa: E402
from services.analytic import db_closed_form, make_analytic_params  # noqa: E402
from services.shell_sums import (  # noqa: E402
    combined_db_enclosure,
    d_log_closed,
    d_power_closed,
    shell_sum_reference,
    shell_sum_to_tolerance,
)

F = Fraction
TOL = F(1, 10 ** 10)


def _ap(p, m, f=1):
    return make_analytic_params(Params(p=p, f=f, m=m))


class TestClosedForms:
    """Known values of the two-case formulas."""

    @pytest.mark.parametrize(
        "p,m,i,j,ell,expected",
        [
            (3, 2, 0, 1, 0, F(-1, 6)),
            (2, 1, 0, 0, 2, F(-3)),
            (2, 2, 0, 0, 1, F(-7, 4)),
            (5, 3, 1, 1, 1, F(-1, 4)),
        ],
    )
    def test_d_log(self, p, m, i, j, ell, expected):
        assert d_log_closed(i, j, ell, _ap(p, m)) == expected

    @pytest.mark.parametrize(
        "n,p,m,i,j,ell,expected",
        [
            (1, 3, 2, 1, 0, 0, F(-1, 12)),
            (1, 3, 1, 0, 0, 1, F(-1, 36)),
            (1, 2, 2, 0, 0, 1, F(-5, 24)),
            (2, 2, 1, 0, 0, 0, F(-3, 7)),
            (2, 2, 1, 0, 0, 1, F(-3, 14)),
        ],
    )
    def test_d_power(self, n, p, m, i, j, ell, expected):
        assert d_power_closed(n, i, j, ell, _ap(p, m)) == expected

    def test_invalid_arguments(self):
        ap = _ap(2, 2)
        with pytest.raises(ValueError):
            d_power_closed(0, 0, 1, 0, ap)
        with pytest.raises(ValueError):
            d_log_closed(1, 1, 0, ap)


class TestShellSums:
    @pytest.mark.parametrize("p,f", [(2, 1), (3, 1), (2, 2)])
    @pytest.mark.parametrize("i,j,ell", [(0, 0, 0), (0, 0, 2), (1, 1, 3), (0, 1, 0), (2, 0, 0)])
    def test_log_sums_contain_closed_form(self, p, f, i, j, ell):
        ap = _ap(p, 3, f)
        enclosure = shell_sum_to_tolerance(ShellKind.LOG, i, j, ell, ap, TOL)
        assert enclosure.radius <= TOL
        assert enclosure.contains(d_log_closed(i, j, ell, ap))

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    @pytest.mark.parametrize("i,j,ell", [(0, 0, 0), (1, 1, 2), (0, 2, 0), (2, 2, 4)])
    def test_power_sums_contain_closed_form(self, n, i, j, ell):
        ap = _ap(3, 3)
        enclosure = shell_sum_to_tolerance(ShellKind.POWER, i, j, ell, ap, TOL, n=n)
        assert enclosure.contains(d_power_closed(n, i, j, ell, ap))

    def test_deeper_sums_are_tighter(self):
        ap = _ap(2, 2)
        shallow = shell_sum_reference(ShellSumSpec(kind=ShellKind.LOG, i=0, j=0, ell=1, depth=4), ap)
        deep = shell_sum_reference(ShellSumSpec(kind=ShellKind.LOG, i=0, j=0, ell=1, depth=16), ap)
        assert deep.radius < shallow.radius

    @pytest.mark.parametrize("kind,n", [(ShellKind.LOG, None), (ShellKind.POWER, 2)])
    @pytest.mark.parametrize("tol", [F(1, 100), F(1, 10 ** 6)])
    def test_tolerance_picks_smallest_depth(self, kind, n, tol):
        ap = _ap(2, 2)
        depth = 1
        while True:
            scanned = shell_sum_reference(ShellSumSpec(kind=kind, i=0, j=0, ell=1, depth=depth, n=n), ap)
            if scanned.radius <= tol:
                break
            depth += 1
        assert shell_sum_to_tolerance(kind, 0, 0, 1, ap, tol, n=n) == scanned

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            ShellSumSpec(kind=ShellKind.LOG, i=0, j=0, ell=0, depth=0)
        with pytest.raises(ValueError):
            ShellSumSpec(kind=ShellKind.POWER, i=0, j=0, ell=0, depth=4)
        with pytest.raises(ValueError):
            ShellSumSpec(kind=ShellKind.LOG, i=1, j=1, ell=0, depth=4)


class TestCombinedSum:
    @pytest.mark.parametrize("p,f", [(2, 1), (3, 1), (2, 2), (5, 1)])
    def test_matches_db_closed_form(self, p, f):
        params = Params(p=p, f=f, m=3)
        ap = make_analytic_params(params)
        for i in range(3):
            for j in range(3):
                ell = i + 2 if i == j else min(i, j)
                enclosure = combined_db_enclosure(i, j, ell, ap, F(1, 10 ** 12))
                assert enclosure.contains(db_closed_form(i, j, params))

    def test_independent_of_ell_on_the_diagonal(self):
        ap = _ap(2, 2)
        values = [combined_db_enclosure(0, 0, ell, ap, F(1, 10 ** 12)) for ell in range(5)]
        assert all(values[0].overlaps(v) for v in values[1:])
