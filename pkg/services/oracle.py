"""Exact Green tables on finite quotients: the ground-truth oracle.

At level k the Green equation D G(., y) = delta_y - 1/V becomes a singular
rational linear system whose kernel is the constants. Each column is pinned
by the zero-mean constraint and the table is then shifted by one constant.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from config.settings import ORACLE_CACHE_SIZE
from green_enums import Normalization
from models.coset import Coset
from models.params import Params
from models.tables import GreenTable, RationalMatrix
from services.laplacian import build_operator_matrix
from services.ultrametric import (
    enumerate_cosets,
    lift_to_level,
    total_volume,
    valuation_of_difference,
)
from utils.errors import AsymmetricMatrixError, NotStabilizedError, SingularSystemError
from utils.linalg import solve_exact

logger = logging.getLogger(__name__)

CosetPair = Tuple[Coset, Coset]


def green_rhs(params: Params) -> List[List[Fraction]]:
    """Right-hand sides q^k [x = y] - 1/V, one column per y."""
    n = params.coset_count
    delta = Fraction(params.q ** params.k)
    background = 1 / total_volume(params)
    return [[(delta if x == y else 0) - background for y in range(n)] for x in range(n)]


def _symmetrize_columns(rows: List[List[Fraction]]) -> List[List[Fraction]]:
    # Column y may be shifted by c_y; choose c_y so that entry (y, 0) matches (0, y).
    n = len(rows)
    shifts = [rows[y][0] - rows[0][y] for y in range(n)]
    return [[rows[x][y] + shifts[y] for y in range(n)] for x in range(n)]


@lru_cache(maxsize=ORACLE_CACHE_SIZE)
def solve_green(params: Params) -> GreenTable:
    """Symmetric, max-zero normalized Green table at level k.

    Raises:
        SingularSystemError: If the bordered system is singular, which means
            the operator matrix has more than the constants in its kernel.
        AsymmetricMatrixError: If no per-column shift makes the table symmetric.
    """
    operator = build_operator_matrix(params)
    n = operator.dim
    # Bordered system [[D, 1], [1^T, 0]] enforces sum_x g(x) = 0 (uniform mu^x).
    bordered = [list(row) + [Fraction(1)] for row in operator.entries]
    bordered.append([Fraction(1)] * n + [Fraction(0)])
    rhs = green_rhs(params)
    rhs.append([Fraction(0)] * n)

    try:
        solution = solve_exact(bordered, rhs)
    except SingularSystemError as e:
        logger.error(f"Green solve failed for {params.label()}: {e}")
        raise

    multipliers = solution[n]
    if any(multipliers):
        logger.warning(f"Nonzero constraint multipliers for {params.label()}")
    rows = solution[:n]

    matrix = RationalMatrix.from_rows(rows, operator.order)
    if not matrix.is_symmetric():
        logger.warning(f"Column solutions not symmetric for {params.label()}; shifting columns")
        matrix = RationalMatrix.from_rows(_symmetrize_columns(rows), operator.order)
        if not matrix.is_symmetric():
            raise AsymmetricMatrixError(f"Green table for {params.label()} cannot be symmetrized")

    table = GreenTable(params=params, matrix=matrix, normalization=Normalization.ANCHORED, anchor=None)
    logger.info(f"Solved {n}x{n} Green table for {params.label()}")
    return normalize(table, Normalization.MAX_ZERO)


def normalize(
    table: GreenTable,
    mode: Normalization,
    anchor: Optional[Tuple[int, int]] = None,
) -> GreenTable:
    """Fix the additive constant of a Green table.

    Args:
        table: Symmetric Green table
        mode: MAX_ZERO shifts the maximum to 0; ANCHORED shifts entry ``anchor`` to 0
        anchor: Canonical (row, col) indices, required for ANCHORED

    Raises:
        ValueError: If the anchor is missing or out of range.
    """
    matrix = table.matrix
    if mode == Normalization.MAX_ZERO:
        return GreenTable(table.params, matrix.shifted(-matrix.max_entry()), mode, None)

    if anchor is None:
        raise ValueError("Anchored normalization needs an anchor pair")
    row, col = anchor
    if not (0 <= row < matrix.dim and 0 <= col < matrix.dim):
        raise ValueError(f"Anchor {anchor} out of range for a {matrix.dim}x{matrix.dim} table")
    return GreenTable(table.params, matrix.shifted(-matrix[row, col]), mode, (row, col))


def is_resolved(x: Coset, y: Coset, params: Params) -> bool:
    """k >= (l - r) + m, with r = min valuation and l = v(x - y); False on the diagonal."""
    if x == y:
        return False
    r = min(x.s, y.s)
    ell = valuation_of_difference(x, y)
    return params.k >= (ell - r) + params.m


def resolved_pairs(params: Params) -> List[CosetPair]:
    """Off-diagonal pairs whose level-k values are final, in canonical order."""
    order = enumerate_cosets(params)
    return [(x, y) for x in order for y in order if is_resolved(x, y, params)]


def stabilized_value(
    x: Coset,
    y: Coset,
    params: Params,
    k_max: int,
    reference: Optional[CosetPair] = None,
) -> Fraction:
    """Limit of G_k(x, y) - G_k(x0, y0) as the level grows.

    The pair and the reference are lifted with zero digits to every level;
    the first two consecutive levels that agree exactly give the value.

    Raises:
        ValueError: If x == y.
        NotStabilizedError: If no two consecutive levels up to k_max agree.
    """
    if x == y:
        raise ValueError(f"stabilized_value needs distinct cosets, got {x.to_dict()} twice")
    start = max(x.level, y.level)
    if reference is None:
        order = enumerate_cosets(params.at_level(start))
        reference = (order[0], order[1])
    x0, y0 = reference

    previous: Optional[Fraction] = None
    for k in range(start, k_max + 1):
        table = solve_green(params.at_level(k))
        current = (
            table.value(lift_to_level(x, k), lift_to_level(y, k))
            - table.value(lift_to_level(x0, k), lift_to_level(y0, k))
        )
        logger.debug(f"Level {k}: difference {current}")
        if previous is not None and current == previous:
            return current
        previous = current
    raise NotStabilizedError(
        f"not stabilized: G_k differences for {x.to_dict()}, {y.to_dict()} still moving at k = {k_max}"
    )
