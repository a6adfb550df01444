"""Tests for B, C and the closed form of D B."""
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add project root to path
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from models import Coset, Params  # noqa: E402
from services.analytic import (  # noqa: E402
    analytic_green,
    b_enclosure,
    b_exact,
    b_tail_radius,
    b_value,
    c_matrix,
    c_matrix_via_linear_system,
    db_closed_form,
    kms_system,
    lambda_n,
    make_analytic_params,
    terms_for_tolerance,
)
from utils.errors import DegenerateSystemError, UnresolvedValuationError  # noqa: E402

F = Fraction
TOL = F(1, 10 ** 12)

# (p, f) pairs covering q = 2, 3, 4, 5
BASES = [(2, 1), (3, 1), (2, 2), (5, 1)]


def _ap(p, m, f=1):
    return make_analytic_params(Params(p=p, f=f, m=m))


class TestAnalyticParams:
    def test_constants(self):
        ap = _ap(2, 1)
        assert ap.lambda0 == F(2, 3)
        assert ap.u == (F(2),)
        assert ap.rho(0) == F(2, 3)

    def test_two_layers(self):
        ap = _ap(2, 2)
        assert ap.u == (F(3, 2), F(3, 2))
        assert ap.big_lambda == (F(3, 4), F(3, 4))


class TestLambda:
    def test_first_coefficients(self):
        ap = _ap(2, 1)
        assert lambda_n(1, 0, ap) == F(4, 3)
        assert lambda_n(2, 0, ap) == F(56, 81)

    def test_rejects_n_zero(self):
        with pytest.raises(ValueError):
            lambda_n(0, 0, _ap(2, 1))

    @pytest.mark.parametrize("p,f", BASES)
    def test_symmetric_in_the_valuation(self, p, f):
        ap = _ap(p, 4, f)
        for n in range(1, 5):
            for r in range(4):
                assert lambda_n(n, r, ap) == lambda_n(n, 3 - r, ap)


class TestB:
    @pytest.mark.parametrize(
        "p,m,r,ell,expected",
        [
            (2, 1, 0, 0, F(0)),
            (2, 1, 0, 1, F(-3)),
            (2, 1, 0, 2, F(-21, 5)),
            (2, 2, 0, 1, F(-16, 9)),
        ],
    )
    def test_exact_values(self, p, m, r, ell, expected):
        assert b_exact(r, ell, _ap(p, m)) == expected

    def test_enclosure_contains_exact(self):
        ap = _ap(2, 1)
        value = b_value(0, 0, 2, ap, TOL)
        assert value.contains(F(-21, 5))
        assert value.radius <= TOL

    @pytest.mark.parametrize("tol", [F(1, 10), F(1, 10 ** 6), TOL])
    def test_terms_for_tolerance_is_minimal(self, tol):
        ap = _ap(3, 2)
        terms = terms_for_tolerance(0, ap, tol)
        assert b_tail_radius(0, terms, ap) <= tol
        if terms > 1:
            assert b_tail_radius(0, terms - 1, ap) > tol

    def test_vanishes_off_equal_valuations(self):
        ap = _ap(3, 3)
        assert b_value(0, 2, 0, ap, TOL).radius == 0
        assert b_value(0, 2, 0, ap, TOL).center == 0
        assert b_value(1, 1, 1, ap, TOL).center == 0

    def test_rejects_bad_inputs(self):
        ap = _ap(3, 3)
        with pytest.raises(ValueError):
            b_value(2, 2, 1, ap, TOL)
        with pytest.raises(ValueError):
            b_value(0, 0, 1, ap, F(0))

    def test_enclosures_nest(self):
        ap = _ap(3, 2)
        wide = b_enclosure(1, 3, ap, 2)
        narrow = b_enclosure(1, 3, ap, 6)
        assert narrow.within(wide)

    @settings(max_examples=40, deadline=None)
    @given(
        base=st.sampled_from(BASES),
        m=st.integers(min_value=1, max_value=4),
        data=st.data(),
    )
    def test_enclosure_contains_closed_form(self, base, m, data):
        p, f = base
        ap = _ap(p, m, f)
        r = data.draw(st.integers(min_value=0, max_value=m - 1))
        t = data.draw(st.integers(min_value=0, max_value=5))
        assert b_value(r, r, r + t, ap, F(1, 10 ** 8)).contains(b_exact(r, r + t, ap))


class TestCMatrix:
    def test_single_layer_is_zero(self):
        assert c_matrix(Params(p=2, m=1)).rows() == [[F(0)]]

    def test_small_cases(self):
        assert c_matrix(Params(p=2, m=2)).rows() == [[F(-4, 3), F(0)], [F(0), F(-4, 3)]]
        assert c_matrix(Params(p=2, m=3)).rows() == [
            [F(-12, 7), F(-2, 3), F(0)],
            [F(-2, 3), F(-4, 3), F(-2, 3)],
            [F(0), F(-2, 3), F(-12, 7)],
        ]
        assert c_matrix(Params(p=3, m=2))[0, 0] == F(-27, 16)
        assert c_matrix(Params(p=2, m=4))[0, 0] == F(-272, 135)

    def test_depends_only_on_q(self):
        assert c_matrix(Params(p=2, f=2, m=3)) == c_matrix(Params(p=2, f=2, e=3, m=3))

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    @pytest.mark.parametrize("m", range(2, 11))
    def test_recurrence_matches_linear_system(self, p, m):
        params = Params(p=p, m=m)
        assert c_matrix(params) == c_matrix_via_linear_system(params)

    def test_linear_system_needs_two_layers(self):
        with pytest.raises(DegenerateSystemError, match="degenerate"):
            c_matrix_via_linear_system(Params(p=2, m=1))

    @pytest.mark.parametrize("p,f", BASES)
    def test_kms_right_hand_side_has_zero_column_sums(self, p, f):
        _, rhs = kms_system(Params(p=p, f=f, m=4))
        for j in range(4):
            assert sum(row[j] for row in rhs) == 0

    def test_kms_right_hand_side_row(self):
        _, rhs = kms_system(Params(p=2, m=3))
        assert sum(rhs[0]) == F(-1, 14)


class TestDBClosedForm:
    def test_value(self):
        assert db_closed_form(0, 0, Params(p=2, m=2)) == F(-4, 3)

    @pytest.mark.parametrize("p,f", BASES)
    @pytest.mark.parametrize("m", [1, 2, 3, 5])
    def test_columns_balance_the_source(self, p, f, m):
        params = Params(p=p, f=f, m=m)
        for j in range(m):
            assert sum(db_closed_form(i, j, params) for i in range(m)) == -F(params.q, params.q - 1)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            db_closed_form(0, 2, Params(p=2, m=2))


class TestAnalyticGreen:
    def test_sums_b_and_c(self):
        params = Params(p=2, m=2, k=3)
        value = analytic_green(Coset(0, (1, 0, 0)), Coset(0, (1, 1, 0)), params, TOL)
        assert value.contains(F(-16, 9) + F(-4, 3))

    def test_identical_cosets(self):
        c = Coset(0, (1,))
        with pytest.raises(UnresolvedValuationError):
            analytic_green(c, c, Params(p=2, m=1), TOL)
