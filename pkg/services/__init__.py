"""Computational services: domain, operator, oracle, analytic formula, verifier."""
from services.analytic import (
    analytic_green,
    b_exact,
    b_value,
    c_matrix,
    c_matrix_via_linear_system,
    db_closed_form,
    lambda_n,
    make_analytic_params,
)
from services.laplacian import apply, build_operator_matrix, fiber_average, spectrum
from services.oracle import normalize, resolved_pairs, solve_green, stabilized_value
from services.shell_sums import (
    combined_db_enclosure,
    d_log_closed,
    d_power_closed,
    shell_sum_reference,
)
from services.ultrametric import (
    additive_measure,
    enumerate_cosets,
    multiplicative_measure,
    reflect,
    shell_measure,
    unit_multiply,
    valuation_of_difference,
)

__all__ = [
    'additive_measure',
    'analytic_green',
    'apply',
    'b_exact',
    'b_value',
    'build_operator_matrix',
    'c_matrix',
    'c_matrix_via_linear_system',
    'combined_db_enclosure',
    'd_log_closed',
    'd_power_closed',
    'db_closed_form',
    'enumerate_cosets',
    'fiber_average',
    'lambda_n',
    'make_analytic_params',
    'multiplicative_measure',
    'normalize',
    'reflect',
    'resolved_pairs',
    'shell_measure',
    'shell_sum_reference',
    'solve_green',
    'spectrum',
    'stabilized_value',
    'unit_multiply',
    'valuation_of_difference',
]
