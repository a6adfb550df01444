"""Assemble verification reports from independent check tasks.

Tasks run on a thread pool; results are collected in submission order so a
report depends only on its grid and tolerance. A task that raises becomes a
failed entry in the report.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Set

from config.settings import (
    FIXTURE_PRIMES,
    FIXTURE_SIZES,
    CLOSED_FORM_BASES,
    CLOSED_FORM_SIZES,
    DEFAULT_TOLERANCE,
    LINEAR_SYSTEM_PRIMES,
    LINEAR_SYSTEM_SIZES,
    MAX_ORACLE_DIM,
    acceptance_grid,
)
from green_enums import CheckStatus
from models.params import Params
from models.report import CheckResult, Report
from verification.c_matrix_fixture import (
    BISYMMETRY_CHECK,
    FIXTURE_CHECK,
    LINEAR_SYSTEM_CHECK,
    appendix_b_fixture_check,
    fixture_bisymmetry_check,
    fixture_sizes,
    linear_system_check,
)
from verification.closed_forms import closed_form_checks
from verification.crosscheck import crosscheck_green
from verification.invariants import run_invariant_suite

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckTask:
    """A named unit of work producing one or more check results."""
    name: str
    params: Dict[str, Any]
    run: Callable[[], List[CheckResult]]

    def __call__(self) -> List[CheckResult]:
        try:
            return self.run()
        except Exception as e:
            logger.error(f"Check task {self.name} at {self.params} raised {type(e).__name__}: {e}")
            return [
                CheckResult(
                    name=self.name,
                    params=self.params,
                    status=CheckStatus.FAIL,
                    witness={'error': str(e)},
                )
            ]


def cell_checks(params: Params, tol: Fraction) -> List[CheckResult]:
    """Crosscheck plus the invariant suite at one cell."""
    logger.info(f"Verifying cell {params.label()}")
    return [crosscheck_green(params, tol)] + run_invariant_suite(params, tol)


def _single(check: Callable[[], CheckResult]) -> Callable[[], List[CheckResult]]:
    return lambda: [check()]


def _fixture_tasks(p: int, m: int) -> List[CheckTask]:
    return [
        CheckTask(BISYMMETRY_CHECK, {'m': m}, _single(partial(fixture_bisymmetry_check, m))),
        CheckTask(FIXTURE_CHECK, {'p': p, 'm': m}, _single(partial(appendix_b_fixture_check, p, m))),
    ]


def _linear_system_task(params: Params) -> CheckTask:
    return CheckTask(
        LINEAR_SYSTEM_CHECK,
        {'q': params.q, 'm': params.m},
        _single(partial(linear_system_check, params)),
    )


def _closed_form_task(params: Params, tol: Fraction) -> CheckTask:
    return CheckTask('closed_form_checks', {'q': params.q, 'm': params.m}, partial(closed_form_checks, params, tol))


def cell_tasks(params: Params, tol: Fraction, seen: Optional[Set[Hashable]] = None) -> List[CheckTask]:
    """Everything that applies to one cell, including its C-matrix and closed-form checks.

    Checks that depend only on (p, m) or (q, m) are skipped when their key is
    already in ``seen``, so a grid with several levels runs each of them once.
    """
    seen = set() if seen is None else seen
    tasks = [CheckTask('cell_checks', params.to_dict(), partial(cell_checks, params, tol))]
    shared: List[CheckTask] = []
    if params.f == 1 and params.m in fixture_sizes():
        shared.extend(_fixture_tasks(params.p, params.m))
    if params.m >= 2:
        shared.append(_linear_system_task(params))
    shared.append(_closed_form_task(params, tol))
    for task in shared:
        key = (task.name, tuple(sorted(task.params.items())))
        if key not in seen:
            seen.add(key)
            tasks.append(task)
    return tasks


def acceptance_tasks(tol: Fraction, max_dim: int = MAX_ORACLE_DIM) -> List[CheckTask]:
    """The full acceptance run: oracle grid, fixtures, C systems and closed forms."""
    tasks = [
        CheckTask('cell_checks', cell.to_dict(), partial(cell_checks, cell, tol))
        for cell in acceptance_grid(max_dim)
    ]
    for m in FIXTURE_SIZES:
        tasks.append(_fixture_tasks(FIXTURE_PRIMES[0], m)[0])
        for p in FIXTURE_PRIMES:
            tasks.append(_fixture_tasks(p, m)[1])
    for p in LINEAR_SYSTEM_PRIMES:
        for m in LINEAR_SYSTEM_SIZES:
            tasks.append(_linear_system_task(Params(p=p, m=m)))
    for p, f in CLOSED_FORM_BASES:
        for m in CLOSED_FORM_SIZES:
            tasks.append(_closed_form_task(Params(p=p, f=f, m=m), tol))
    return tasks


def run_tasks(tasks: Sequence[Callable[[], List[CheckResult]]], threads: int = 1) -> List[CheckResult]:
    """Run tasks on ``threads`` workers, keeping submission order."""
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    with ThreadPoolExecutor(max_workers=threads) as executor:
        chunks = list(executor.map(lambda task: task(), tasks))
    return [result for chunk in chunks for result in chunk]


def run_verification(
    grid: Sequence[Params],
    tol: Fraction = DEFAULT_TOLERANCE,
    threads: int = 1,
) -> Report:
    """Verify each cell of ``grid`` with every check that applies to it."""
    seen: Set[Hashable] = set()
    tasks = [task for cell in grid for task in cell_tasks(cell, tol, seen)]
    report = Report.from_results([cell.to_dict() for cell in grid], run_tasks(tasks, threads))
    logger.info(
        f"Verification finished: {report.summary.passed} passed, "
        f"{report.summary.fail} failed, {report.summary.skipped} skipped"
    )
    return report


def run_acceptance(
    tol: Fraction = DEFAULT_TOLERANCE,
    threads: int = 1,
    max_dim: int = MAX_ORACLE_DIM,
) -> Report:
    """The acceptance grid plus the fixed fixture, C-system and closed-form grids."""
    grid = acceptance_grid(max_dim)
    logger.info(f"Acceptance run over {len(grid)} oracle cells with {threads} worker(s)")
    report = Report.from_results([cell.to_dict() for cell in grid], run_tasks(acceptance_tasks(tol, max_dim), threads))
    logger.info(
        f"Acceptance finished: {report.summary.passed} passed, "
        f"{report.summary.fail} failed, {report.summary.skipped} skipped"
    )
    return report
