"""Exact rational linear algebra on dense row-major matrices.

Matrices are plain ``list[list[Fraction]]``; callers wrap them in
``models.RationalMatrix`` when coset indexing matters.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

from utils.errors import DimensionMismatchError, SingularSystemError

logger = logging.getLogger(__name__)

Matrix = List[List[Fraction]]
ZERO = Fraction(0)


def _pivot_magnitude(value: Fraction) -> float:
    # Float proxy only steers pivot choice; huge or tiny values still compare.
    try:
        return abs(float(value))
    except OverflowError:
        return float("inf")


def _pick_pivot(rows: Matrix, col: int, start: int) -> Optional[int]:
    best: Optional[int] = None
    best_mag = -1.0
    for r in range(start, len(rows)):
        value = rows[r][col]
        if value == 0:
            continue
        mag = _pivot_magnitude(value)
        if mag > best_mag:
            best, best_mag = r, mag
    return best


class ExactGaussianElimination:
    """Gaussian elimination with partial pivoting over the rationals.

    Solves ``A X = B`` for a square nonsingular ``A`` and any number of
    right-hand-side columns at once.
    """

    def __init__(self, matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Sequence[Fraction]]) -> None:
        n = len(matrix)
        if any(len(row) != n for row in matrix):
            raise DimensionMismatchError(f"Coefficient matrix is not square ({n} rows)")
        if len(rhs) != n:
            raise DimensionMismatchError(
                f"Right-hand side has {len(rhs)} rows, expected {n}"
            )
        self.size = n
        self.width = len(rhs[0]) if n else 0
        # Augmented rows [A | B]
        self.rows: Matrix = [list(matrix[i]) + list(rhs[i]) for i in range(n)]

    def run(self) -> Matrix:
        """Eliminate then back-substitute; returns X with the shape of B."""
        self.eliminate()
        return self.substitute()

    def eliminate(self) -> None:
        a = self.rows
        n = self.size
        for i in range(n):
            pivot_row = _pick_pivot(a, i, i)
            if pivot_row is None:
                raise SingularSystemError(f"No pivot in column {i} of a {n}x{n} system")
            if pivot_row != i:
                a[i], a[pivot_row] = a[pivot_row], a[i]
            pivot = a[i][i]
            head = a[i]
            for j in range(i + 1, n):
                row = a[j]
                factor = row[i] / pivot
                if factor == 0:
                    continue
                for c in range(i, n + self.width):
                    if head[c]:
                        row[c] -= factor * head[c]

    def substitute(self) -> Matrix:
        a = self.rows
        n = self.size
        solution: Matrix = [[ZERO] * self.width for _ in range(n)]
        for j in reversed(range(n)):
            pivot = a[j][j]
            for col in range(self.width):
                acc = a[j][n + col]
                for c in range(j + 1, n):
                    if a[j][c]:
                        acc -= a[j][c] * solution[c][col]
                solution[j][col] = acc / pivot
        return solution


def solve_exact(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Sequence[Fraction]]) -> Matrix:
    """Solve ``matrix @ X = rhs`` exactly; ``rhs`` is n x r."""
    solver = ExactGaussianElimination(matrix, rhs)
    return solver.run()


def exact_rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix by exact row reduction."""
    rows: Matrix = [list(row) for row in matrix]
    if not rows:
        return 0
    n_cols = len(rows[0])
    rank = 0
    for col in range(n_cols):
        pivot_row = _pick_pivot(rows, col, rank)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        head = rows[rank]
        for j in range(rank + 1, len(rows)):
            factor = rows[j][col] / head[col]
            if factor:
                rows[j] = [x - factor * y for x, y in zip(rows[j], head)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> Tuple[List[List[int]], int]:
    # Denominators are cleared once; inner products run on ints.
    scale = 1
    for row in rows:
        for value in row:
            scale = lcm(scale, value.denominator)
    return [[int(value * scale) for value in row] for row in rows], scale


def matmul(left: Sequence[Sequence[Fraction]], right: Sequence[Sequence[Fraction]]) -> Matrix:
    """Exact product of two rational matrices."""
    inner = len(right)
    if left and len(left[0]) != inner:
        raise DimensionMismatchError(
            f"Cannot multiply {len(left)}x{len(left[0])} by {inner}x{len(right[0]) if inner else 0}"
        )
    left_ints, left_scale = _integer_rows(left)
    right_ints, right_scale = _integer_rows(right)
    denominator = left_scale * right_scale
    columns = list(zip(*right_ints))
    return [
        [Fraction(sum(a * b for a, b in zip(row, column)), denominator) for column in columns]
        for row in left_ints
    ]


def matvec(matrix: Sequence[Sequence[Fraction]], vector: Sequence[Fraction]) -> List[Fraction]:
    """Exact matrix-vector product."""
    if matrix and len(matrix[0]) != len(vector):
        raise DimensionMismatchError(
            f"Vector of length {len(vector)} does not match {len(matrix[0])} columns"
        )
    return [column[0] for column in matmul(matrix, [[Fraction(v)] for v in vector])]
