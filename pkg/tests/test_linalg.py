"""Tests for exact rational linear algebra."""
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

# Add project root to path
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from utils.errors import DimensionMismatchError, SingularSystemError  # noqa: E402
from utils.linalg import exact_rank, matmul, matvec, solve_exact  # noqa: E402

F = Fraction


def _rows(values):
    return [[F(v) for v in row] for row in values]


class TestSolveExact:
    """ExactGaussianElimination through solve_exact."""

    def test_two_by_two(self):
        solution = solve_exact(_rows([[2, 1], [1, 3]]), _rows([[1], [2]]))
        assert solution == [[F(1, 5)], [F(3, 5)]]

    def test_several_right_hand_sides(self):
        solution = solve_exact(_rows([[1, 1], [0, 2]]), _rows([[1, 2], [2, 4]]))
        assert solution == [[F(0), F(0)], [F(1), F(2)]]

    def test_needs_pivoting(self):
        solution = solve_exact(_rows([[0, 1], [1, 0]]), _rows([[3], [4]]))
        assert solution == [[F(4)], [F(3)]]

    def test_singular_raises(self):
        with pytest.raises(SingularSystemError):
            solve_exact(_rows([[1, 2], [2, 4]]), _rows([[1], [2]]))

    def test_shape_errors(self):
        with pytest.raises(DimensionMismatchError):
            solve_exact(_rows([[1, 2]]), _rows([[1]]))
        with pytest.raises(DimensionMismatchError):
            solve_exact(_rows([[1, 0], [0, 1]]), _rows([[1]]))

    @settings(max_examples=50, deadline=None)
    @given(
        st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=3),
            min_size=3,
            max_size=3,
        ),
        st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=3),
    )
    def test_solution_satisfies_system(self, matrix, rhs):
        a = _rows(matrix)
        assume(exact_rank(a) == 3)
        b = [[F(v)] for v in rhs]
        assert matmul(a, solve_exact(a, b)) == b


class TestRankAndProducts:
    @pytest.mark.parametrize(
        "matrix,rank",
        [
            ([[1, 2], [2, 4]], 1),
            ([[1, 0], [0, 1]], 2),
            ([[0, 0], [0, 0]], 0),
            ([[1, 2, 3], [4, 5, 6], [7, 8, 9]], 2),
            ([[1, -1], [-1, 1]], 1),
        ],
    )
    def test_exact_rank(self, matrix, rank):
        assert exact_rank(_rows(matrix)) == rank

    def test_rank_of_empty_matrix(self):
        assert exact_rank([]) == 0

    def test_matmul_with_fractions(self):
        left = [[F(1, 2), F(1, 3)]]
        right = [[F(2)], [F(3, 4)]]
        assert matmul(left, right) == [[F(5, 4)]]

    def test_matmul_shape_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            matmul(_rows([[1, 2]]), _rows([[1, 2]]))

    def test_matvec(self):
        assert matvec(_rows([[1, 2], [3, 4]]), [F(1, 2), F(-1)]) == [F(-3, 2), F(-5, 2)]
        with pytest.raises(DimensionMismatchError):
            matvec(_rows([[1, 2]]), [F(1)])
