"""Golden C matrices for m = 2..7, stored as rational functions of p."""
from __future__ import annotations

import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from config.settings import C_MATRIX_FIXTURE
from green_enums import CheckStatus
from models.params import Params
from models.report import CheckResult
from models.tables import RationalMatrix
from services.analytic import c_matrix, c_matrix_via_linear_system
from utils.errors import SingularSystemError
from utils.rationals import render_rational
from verification.expressions import evaluate_expression

logger = logging.getLogger(__name__)

FIXTURE_CHECK = "c_matrix_golden_fixture"
BISYMMETRY_CHECK = "c_matrix_fixture_bisymmetric"
LINEAR_SYSTEM_CHECK = "c_matrix_recurrence_matches_linear_system"

ExpressionRows = List[List[str]]


@lru_cache(maxsize=4)
def load_c_fixture(path: Path = C_MATRIX_FIXTURE) -> Dict[int, ExpressionRows]:
    """Expression strings keyed by m."""
    with open(path, "r") as f:
        payload = json.load(f)
    matrices = {int(m): rows for m, rows in payload["matrices"].items()}
    logger.debug(f"Loaded C-matrix fixtures for m in {sorted(matrices)} from {path}")
    return matrices


def fixture_sizes() -> List[int]:
    return sorted(load_c_fixture())


def _expressions(m: int) -> ExpressionRows:
    fixtures = load_c_fixture()
    if m not in fixtures:
        raise ValueError(f"No C-matrix fixture for m={m}; available: {sorted(fixtures)}")
    return fixtures[m]


def fixture_matrix(p: int, m: int) -> RationalMatrix:
    """The fixture for size m evaluated exactly at p."""
    return RationalMatrix.from_rows(
        [[evaluate_expression(text, p) for text in row] for row in _expressions(m)]
    )


def _bisymmetry_witness(rows: ExpressionRows) -> Optional[Tuple[int, int]]:
    m = len(rows)
    for i in range(m):
        if len(rows[i]) != m:
            return (i, len(rows[i]))
        for j in range(m):
            if rows[i][j] != rows[j][i] or rows[i][j] != rows[m - 1 - i][m - 1 - j]:
                return (i, j)
    return None


def fixture_bisymmetry_check(m: int) -> CheckResult:
    """The transcribed strings themselves must be symmetric and centrosymmetric."""
    witness = _bisymmetry_witness(_expressions(m))
    if witness is None:
        return CheckResult(name=BISYMMETRY_CHECK, params={'m': m}, status=CheckStatus.PASS)
    logger.error(f"C-matrix fixture for m={m} is not bisymmetric at {witness}")
    return CheckResult(
        name=BISYMMETRY_CHECK,
        params={'m': m},
        status=CheckStatus.FAIL,
        witness={'index': list(witness)},
    )


def appendix_b_fixture_check(p: int, m: int) -> CheckResult:
    """Compare c_matrix at (p, f=1, m) entrywise with the evaluated fixture."""
    params = Params(p=p, m=m)
    cell = {'p': p, 'm': m}
    computed = c_matrix(params)
    expected = fixture_matrix(p, m)
    for i in range(m):
        for j in range(m):
            if computed[i, j] != expected[i, j]:
                logger.error(f"C-matrix mismatch at p={p}, m={m}, entry ({i}, {j})")
                return CheckResult(
                    name=FIXTURE_CHECK,
                    params=cell,
                    status=CheckStatus.FAIL,
                    witness={
                        'index': [i, j],
                        'computed': render_rational(computed[i, j]),
                        'expected': render_rational(expected[i, j]),
                    },
                )
    return CheckResult(name=FIXTURE_CHECK, params=cell, status=CheckStatus.PASS)


def linear_system_check(params: Params) -> CheckResult:
    """Recurrence and KMS linear system must give the same C exactly."""
    m = params.m
    cell = {'q': params.q, 'm': m}
    recurrence = c_matrix(params)
    try:
        solved = c_matrix_via_linear_system(params)
    except SingularSystemError as e:
        logger.error(f"C-matrix linear system failed at q={params.q}, m={m}: {e}")
        return CheckResult(
            name=LINEAR_SYSTEM_CHECK, params=cell, status=CheckStatus.FAIL, witness={'error': str(e)}
        )
    for i in range(m):
        for j in range(m):
            if recurrence[i, j] != solved[i, j]:
                return CheckResult(
                    name=LINEAR_SYSTEM_CHECK,
                    params=cell,
                    status=CheckStatus.FAIL,
                    witness={
                        'index': [i, j],
                        'recurrence': render_rational(recurrence[i, j]),
                        'linear_system': render_rational(solved[i, j]),
                    },
                )
    return CheckResult(name=LINEAR_SYSTEM_CHECK, params=cell, status=CheckStatus.PASS)
