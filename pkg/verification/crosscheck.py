"""Oracle vs. analytic agreement on resolved off-diagonal pairs.

Both sides are defined only up to an additive constant, so every pair is
compared through its difference with one fixed reference pair: the
lexicographically smallest resolved pair.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, Tuple

from green_enums import CheckStatus
from models.params import Params
from models.report import CheckResult
from models.tables import BoundedValue
from services.analytic import analytic_green, make_analytic_params
from services.oracle import resolved_pairs, solve_green
from services.ultrametric import valuation_of_difference
from utils.rationals import render_rational

logger = logging.getLogger(__name__)

CROSSCHECK = "oracle_matches_analytic"


def crosscheck_green(params: Params, tol: Fraction) -> CheckResult:
    """Check G_k(x, y) - G_k(x0, y0) against the analytic enclosure difference.

    Each analytic value is enclosed to tol / 2 so the difference has radius
    at most tol.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    cell = params.to_dict()
    pairs = resolved_pairs(params)
    if not pairs:
        logger.warning(f"No resolved pairs at {params.label()}; crosscheck skipped")
        return CheckResult(name=CROSSCHECK, params=cell, status=CheckStatus.SKIPPED)

    table = solve_green(params)
    ap = make_analytic_params(params)
    half = tol / 2
    # G depends on the pair only through (v(x), v(y), v(x - y)).
    cache: Dict[Tuple[int, int, int], BoundedValue] = {}

    def analytic(x_index: int) -> BoundedValue:
        x, y = pairs[x_index]
        key = (x.s, y.s, valuation_of_difference(x, y))
        if key not in cache:
            cache[key] = analytic_green(x, y, params, half, ap)
        return cache[key]

    x0, y0 = pairs[0]
    oracle_reference = table.value(x0, y0)
    analytic_reference = analytic(0)

    for index, (x, y) in enumerate(pairs):
        oracle_difference = table.value(x, y) - oracle_reference
        enclosure = analytic(index) - analytic_reference
        if not enclosure.contains(oracle_difference):
            logger.error(
                f"Crosscheck failed at {params.label()} for {x.to_string(params.q)}, {y.to_string(params.q)}"
            )
            return CheckResult(
                name=CROSSCHECK,
                params=cell,
                status=CheckStatus.FAIL,
                witness={
                    'pair': [x.to_dict(), y.to_dict()],
                    'reference': [x0.to_dict(), y0.to_dict()],
                    'oracle_difference': render_rational(oracle_difference),
                    'analytic_difference': enclosure.to_dict(),
                },
            )

    logger.info(f"Crosscheck passed on {len(pairs)} resolved pairs at {params.label()}")
    return CheckResult(
        name=CROSSCHECK,
        params=cell,
        status=CheckStatus.PASS,
        details={'pairs': len(pairs), 'classes': len(cache)},
    )
