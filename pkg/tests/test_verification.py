"""Tests for fixtures, crosschecks, invariant suites and report assembly."""
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add project root to path
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from config.settings import acceptance_grid  # noqa: E402
from green_enums import CheckStatus  # noqa: E402
from models import Params  # noqa: E402
from models.report import CheckResult  # noqa: E402
from services.analytic import c_matrix  # noqa: E402
from verification.c_matrix_fixture import (  # noqa: E402
    appendix_b_fixture_check,
    fixture_bisymmetry_check,
    fixture_matrix,
    fixture_sizes,
    linear_system_check,
)
from verification.closed_forms import closed_form_checks, valuation_cases  # noqa: E402
from verification.crosscheck import crosscheck_green  # noqa: E402
from verification.expressions import evaluate_expression, tokenize  # noqa: E402
from verification.invariants import InvariantSuite, sample_cosets, units_below  # noqa: E402
from verification.runner import CheckTask, cell_tasks, run_tasks, run_verification  # noqa: E402

F = Fraction
TOL = F(1, 10 ** 12)


class TestExpressions:
    @pytest.mark.parametrize(
        "text,p,expected",
        [
            ("2p^4+1", 2, F(33)),
            ("-(p^3)/(2(p-1)(p+1))", 2, F(-4, 3)),
            ("p^-2", 3, F(1, 9)),
            ("12/4/3", 5, F(1)),
            ("(p+1)(p-1)", 5, F(24)),
            ("-p^2", 3, F(-9)),
            ("p^(11)", 2, F(2048)),
            ("p^-(2)", 2, F(1, 4)),
            ("2p^(10)+17", 3, F(2 * 3 ** 10 + 17)),
        ],
    )
    def test_evaluates(self, text, p, expected):
        assert evaluate_expression(text, p) == expected

    def test_tokenize(self):
        assert tokenize("2(p-1)") == ["2", "(", "p", "-", "1", ")"]

    @pytest.mark.parametrize("text", ["p+", "(p", "p)", "x+1", "p^p", "p^(1/2)", "p^"])
    def test_rejects_malformed(self, text):
        with pytest.raises(ValueError):
            evaluate_expression(text, 2)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            evaluate_expression("1/(p-2)", 2)


class TestCMatrixFixture:
    def test_sizes(self):
        assert fixture_sizes() == [2, 3, 4, 5, 6, 7]

    def test_fixture_matches_small_case(self):
        assert fixture_matrix(2, 2) == c_matrix(Params(p=2, m=2))

    @pytest.mark.parametrize("m", range(2, 8))
    def test_strings_are_bisymmetric(self, m):
        assert fixture_bisymmetry_check(m).status == CheckStatus.PASS

    @pytest.mark.parametrize("p", [2, 3, 5])
    @pytest.mark.parametrize("m", range(2, 8))
    def test_recurrence_matches_fixture(self, p, m):
        result = appendix_b_fixture_check(p, m)
        assert result.status == CheckStatus.PASS, result.witness

    def test_unknown_size(self):
        with pytest.raises(ValueError, match="No C-matrix fixture"):
            fixture_matrix(2, 9)

    @pytest.mark.parametrize("p,f,m", [(2, 1, 2), (3, 1, 5), (2, 2, 4)])
    def test_linear_system_check(self, p, f, m):
        assert linear_system_check(Params(p=p, f=f, m=m)).status == CheckStatus.PASS


class TestClosedFormChecks:
    def test_valuation_cases(self):
        cases = list(valuation_cases(2, max_gap=1))
        assert cases == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1), (1, 1, 2)]

    @pytest.mark.parametrize("p,f,m", [(2, 1, 1), (3, 1, 2)])
    def test_all_pass(self, p, f, m):
        results = closed_form_checks(Params(p=p, f=f, m=m), TOL)
        assert [r.status for r in results] == [CheckStatus.PASS] * 3


class TestCrosscheck:
    @pytest.mark.parametrize(
        "p,f,m,k",
        [(3, 1, 1, 1), (2, 1, 1, 3), (2, 1, 2, 3), (2, 2, 1, 2)],
    )
    def test_oracle_matches_analytic(self, p, f, m, k):
        result = crosscheck_green(Params(p=p, f=f, m=m, k=k), TOL)
        assert result.status == CheckStatus.PASS, result.witness
        assert result.details['pairs'] > 0

    def test_skipped_without_resolved_pairs(self):
        result = crosscheck_green(Params(p=2, m=2, k=1), TOL)
        assert result.status == CheckStatus.SKIPPED

    def test_rejects_non_positive_tolerance(self):
        with pytest.raises(ValueError):
            crosscheck_green(Params(p=3, m=1, k=1), F(0))


class TestInvariantSuite:
    @pytest.mark.parametrize("p,f,m,k", [(2, 1, 2, 3), (3, 1, 3, 2)])
    def test_no_failures_over_base_field(self, p, f, m, k):
        results = InvariantSuite(Params(p=p, f=f, m=m, k=k), TOL, samples=20).run()
        failures = [(r.name, r.witness) for r in results if r.status == CheckStatus.FAIL]
        assert failures == []
        names = [r.name for r in results]
        assert len(names) == len(set(names))
        assert all(r.status == CheckStatus.PASS for r in results)

    def test_ring_checks_skipped_for_extensions(self):
        results = InvariantSuite(Params(p=2, f=2, m=1, k=2), TOL, samples=20).run()
        by_name = {r.name: r.status for r in results}
        assert CheckStatus.FAIL not in by_name.values()
        for name in (
            "unit_multiply_bijection",
            "reflect_involution",
            "operator_unit_invariance",
            "operator_reflect_invariance",
            "green_unit_invariance",
            "green_reflect_invariance",
            "green_digit_dependence",
            "kms_rhs_column_sums",
        ):
            assert by_name[name] == CheckStatus.SKIPPED
        assert by_name["fiber_consistency"] == CheckStatus.PASS

    def test_next_level_over_cap_is_skipped(self):
        results = InvariantSuite(Params(p=2, m=1, k=2), TOL, max_dim=3, samples=5).run()
        by_name = {r.name: r.status for r in results}
        assert by_name["fiber_consistency"] == CheckStatus.SKIPPED
        assert by_name["locally_constant_preservation"] == CheckStatus.SKIPPED

    def test_helpers(self):
        assert units_below(9, 3) == [1, 2, 4, 5, 7, 8]
        assert sample_cosets(list(range(10)), size=20) == list(range(10))
        assert len(sample_cosets(list(range(100)), size=24)) <= 25


class TestRunner:
    def test_report_is_deterministic(self):
        grid = [Params(p=2, m=1, k=2), Params(p=3, m=2, k=1)]
        first = run_verification(grid, TOL, threads=1).to_dict()
        second = run_verification(grid, TOL, threads=2).to_dict()
        assert first == second
        assert first['grid'] == [cell.to_dict() for cell in grid]
        summary = first['summary']
        assert summary['fail'] == 0
        assert summary['pass'] + summary['skipped'] == len(first['checks'])

    def test_fixture_checks_added_for_fixture_sizes(self):
        report = run_verification([Params(p=3, m=2, k=1)], TOL)
        names = {c.name for c in report.checks}
        assert {"c_matrix_golden_fixture", "c_matrix_fixture_bisymmetric",
                "c_matrix_recurrence_matches_linear_system"} <= names

    @pytest.mark.parametrize("threads", [1, 3])
    def test_raising_task_becomes_failed_entry(self, threads):
        def explode():
            raise ArithmeticError("no pivot")

        passing = CheckResult(name="fine", params={'m': 2}, status=CheckStatus.PASS)
        tasks = [
            CheckTask("exploding", {'m': 3}, explode),
            CheckTask("fine", {'m': 2}, lambda: [passing]),
        ]
        results = run_tasks(tasks, threads=threads)
        assert results[1] == passing
        assert results[0].name == "exploding"
        assert results[0].params == {'m': 3}
        assert results[0].status == CheckStatus.FAIL
        assert results[0].witness == {'error': "no pivot"}

    def test_shared_checks_run_once_per_grid(self):
        seen = set()
        first = cell_tasks(Params(p=3, m=2, k=1), TOL, seen)
        second = cell_tasks(Params(p=3, m=2, k=2), TOL, seen)
        assert [t.name for t in second] == ["cell_checks"]
        assert "c_matrix_golden_fixture" in [t.name for t in first]
        assert len(cell_tasks(Params(p=3, m=2, k=2), TOL)) == len(first)

    def test_report_entries_are_unique_across_levels(self):
        report = run_verification([Params(p=2, m=2, k=1), Params(p=2, m=2, k=2)], TOL)
        keys = [(c.name, tuple(sorted(c.params.items()))) for c in report.checks]
        assert len(keys) == len(set(keys))
        assert sum(c.name == "c_matrix_recurrence_matches_linear_system" for c in report.checks) == 1

    def test_run_tasks_rejects_zero_threads(self):
        with pytest.raises(ValueError):
            run_tasks([], threads=0)

    def test_acceptance_grid_respects_cap(self):
        grid = acceptance_grid(max_dim=10)
        assert grid
        assert all(cell.coset_count <= 10 for cell in grid)
