"""Checks of the D log d and D d^n closed forms against shell sums."""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Tuple

from config.settings import DEFAULT_TOLERANCE, SHELL_SUM_TOLERANCE
from green_enums import CheckStatus, ShellKind
from models.analytic import AnalyticParams
from models.params import Params
from models.report import CheckResult
from models.tables import BoundedValue
from services.analytic import db_closed_form, make_analytic_params
from services.shell_sums import (
    combined_db_enclosure,
    d_log_closed,
    d_power_closed,
    shell_sum_to_tolerance,
)
from utils.rationals import render_rational

logger = logging.getLogger(__name__)

SHELL_SUM_CHECK = "shell_sums_contain_closed_forms"
ELL_INDEPENDENCE_CHECK = "combined_sum_ell_independent"
DB_CHECK = "combined_sum_matches_db_closed_form"

MAX_GAP = 4
MAX_POWER = 6

Case = Tuple[int, int, int]


def valuation_cases(m: int, max_gap: int = MAX_GAP) -> Iterator[Case]:
    """(i, j, l) triples: every l - r in [0, max_gap] on the diagonal, l = min(i, j) off it."""
    for i in range(m):
        for j in range(m):
            if i == j:
                for gap in range(max_gap + 1):
                    yield i, j, i + gap
            else:
                yield i, j, min(i, j)


def _cell(params: Params) -> Dict[str, Any]:
    return {'q': params.q, 'm': params.m}


def _case_record(label: str, case: Case, closed: Fraction, enclosure: BoundedValue) -> Dict[str, Any]:
    i, j, ell = case
    return {
        'case': {'kind': label, 'i': i, 'j': j, 'ell': ell},
        'closed_form': render_rational(closed),
        'enclosure': enclosure.to_dict(),
        'pass': enclosure.contains(closed),
    }


def shell_sum_records(
    ap: AnalyticParams,
    tol: Fraction = SHELL_SUM_TOLERANCE,
    max_power: int = MAX_POWER,
) -> List[Dict[str, Any]]:
    """One record per (case, kind): closed form, shell-sum enclosure, pass flag."""
    records: List[Dict[str, Any]] = []
    for case in valuation_cases(ap.m):
        i, j, ell = case
        log_sum = shell_sum_to_tolerance(ShellKind.LOG, i, j, ell, ap, tol)
        records.append(_case_record('log', case, d_log_closed(i, j, ell, ap), log_sum))
        for n in range(1, max_power + 1):
            power_sum = shell_sum_to_tolerance(ShellKind.POWER, i, j, ell, ap, tol, n=n)
            records.append(_case_record(f'power({n})', case, d_power_closed(n, i, j, ell, ap), power_sum))
    return records


def shell_sum_check(params: Params, tol: Fraction = SHELL_SUM_TOLERANCE) -> CheckResult:
    """Every shell-sum enclosure contains its closed form."""
    records = shell_sum_records(make_analytic_params(params), tol)
    failures = [r for r in records if not r['pass']]
    status = CheckStatus.FAIL if failures else CheckStatus.PASS
    if failures:
        logger.error(f"{len(failures)} closed forms fall outside their shell sums at q={params.q}, m={params.m}")
    return CheckResult(
        name=SHELL_SUM_CHECK,
        params=_cell(params),
        status=status,
        witness=failures[0] if failures else None,
        details={'cases': len(records)},
    )


def ell_independence_check(params: Params, tol: Fraction = DEFAULT_TOLERANCE) -> CheckResult:
    """On equal valuations the lambda-weighted sum must not depend on l."""
    ap = make_analytic_params(params)
    witness: Optional[Dict[str, Any]] = None
    for r in range(ap.m):
        base = combined_db_enclosure(r, r, r, ap, tol)
        for gap in range(1, MAX_GAP + 1):
            other = combined_db_enclosure(r, r, r + gap, ap, tol)
            if not base.overlaps(other):
                witness = {
                    'valuation': r,
                    'ell': [r, r + gap],
                    'enclosures': [base.to_dict(), other.to_dict()],
                }
                break
        if witness is not None:
            break
    if witness is not None:
        logger.error(f"Combined sum depends on l at q={params.q}, m={params.m}: {witness}")
    return CheckResult(
        name=ELL_INDEPENDENCE_CHECK,
        params=_cell(params),
        status=CheckStatus.FAIL if witness else CheckStatus.PASS,
        witness=witness,
    )


def db_check(params: Params, tol: Fraction = DEFAULT_TOLERANCE) -> CheckResult:
    """The combined sum encloses db_closed_form(i, j) for every case."""
    ap = make_analytic_params(params)
    for case in valuation_cases(ap.m):
        i, j, ell = case
        closed = db_closed_form(i, j, params)
        enclosure = combined_db_enclosure(i, j, ell, ap, tol)
        if not enclosure.contains(closed):
            logger.error(f"D B mismatch at q={params.q}, m={params.m}, case {case}")
            return CheckResult(
                name=DB_CHECK,
                params=_cell(params),
                status=CheckStatus.FAIL,
                witness=_case_record('db', case, closed, enclosure),
            )
    return CheckResult(name=DB_CHECK, params=_cell(params), status=CheckStatus.PASS)


def closed_form_checks(params: Params, tol: Fraction = DEFAULT_TOLERANCE) -> List[CheckResult]:
    """All three closed-form checks for one (q, m)."""
    return [
        shell_sum_check(params, max(tol, SHELL_SUM_TOLERANCE)),
        ell_independence_check(params, tol),
        db_check(params, tol),
    ]
