"""Crosschecks, invariant suites, golden fixtures and report assembly."""
from verification.c_matrix_fixture import appendix_b_fixture_check, fixture_matrix, linear_system_check
from verification.closed_forms import closed_form_checks
from verification.crosscheck import crosscheck_green
from verification.invariants import InvariantSuite, run_invariant_suite
from verification.runner import run_acceptance, run_verification

__all__ = [
    'InvariantSuite',
    'appendix_b_fixture_check',
    'closed_form_checks',
    'crosscheck_green',
    'fixture_matrix',
    'linear_system_check',
    'run_acceptance',
    'run_verification',
    'run_invariant_suite',
]
