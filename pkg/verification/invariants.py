"""Structural invariants of the domain, the operator, the oracle and C.

Every check is exact except the eigenvalue bound. A check that does not
apply at the given parameters (ring operations for f > 1, level k + 1 above
the oracle cap, the C system for m = 1) is reported as skipped.
"""
from __future__ import annotations

import itertools
import logging
import math
from fractions import Fraction
from functools import cached_property, partial
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from config.settings import (
    DEFAULT_TOLERANCE,
    EIGENVALUE_TOLERANCE,
    MAX_ORACLE_DIM,
    QUADRATIC_FORM_SAMPLES,
    RANDOM_SEED,
)
from green_enums import CheckStatus
from models.coset import Coset
from models.params import Params
from models.report import CheckResult
from models.tables import GreenTable, RationalMatrix
from services.analytic import (
    b_enclosure,
    b_exact,
    b_value,
    c_matrix,
    db_closed_form,
    kms_system,
    lambda_n,
    make_analytic_params,
    terms_for_tolerance,
)
from services.laplacian import (
    apply,
    build_operator_matrix,
    commutes_with_permutation,
    fiber_average,
    lift_function,
    spectrum,
)
from services.oracle import green_rhs, solve_green
from services.ultrametric import (
    additive_measure,
    digit_shift,
    enumerate_cosets,
    layer_measure,
    multiplicative_measure,
    reflect,
    shell_measure,
    total_volume,
    unit_multiply,
    valuation_of_difference,
)
from utils.linalg import matmul
from utils.rationals import render_rational

logger = logging.getLogger(__name__)

# Cosets used for the cubic-cost pair and triple checks.
SAMPLE_SIZE = 24
MAX_GAP = 4
MAX_POWER = 6
NESTING_TERMS = 8

Check = Callable[[], CheckResult]


def sample_cosets(cosets: Sequence[Coset], size: int = SAMPLE_SIZE) -> List[Coset]:
    """Every coset when there are at most ``size``, otherwise an evenly strided subset."""
    if len(cosets) <= size:
        return list(cosets)
    stride = math.ceil(len(cosets) / size)
    return list(cosets[::stride])


def units_below(modulus: int, p: int) -> List[int]:
    """Integers in [1, modulus) prime to p."""
    return [u for u in range(1, modulus) if u % p != 0]


def _first_mismatch(left: RationalMatrix, right: Sequence[Sequence[Fraction]]) -> Optional[Dict[str, Any]]:
    for i, row in enumerate(right):
        for j, expected in enumerate(row):
            if left[i, j] != expected:
                return {
                    'index': [i, j],
                    'actual': render_rational(left[i, j]),
                    'expected': render_rational(expected),
                }
    return None


class InvariantSuite:
    """All invariant checks for one parameter cell.

    The operator matrix, the Green table and their level-(k+1) counterparts
    are built lazily and shared between checks.
    """

    def __init__(
        self,
        params: Params,
        tol: Fraction = DEFAULT_TOLERANCE,
        max_dim: int = MAX_ORACLE_DIM,
        samples: int = QUADRATIC_FORM_SAMPLES,
        seed: int = RANDOM_SEED,
    ) -> None:
        self.params = params
        self.tol = tol
        self.max_dim = max_dim
        self.samples = samples
        self.seed = seed
        self.cell = params.to_dict()

    # ------------------------------------------------------------------
    # Shared state
    # ------------------------------------------------------------------

    @cached_property
    def cosets(self) -> List[Coset]:
        return enumerate_cosets(self.params)

    @cached_property
    def operator(self) -> RationalMatrix:
        return build_operator_matrix(self.params)

    @cached_property
    def green(self) -> GreenTable:
        return solve_green(self.params)

    @cached_property
    def next_level(self) -> Optional[Params]:
        """Params at k + 1, or None when that level is above the cap."""
        candidate = self.params.at_level(self.params.k + 1)
        return candidate if candidate.coset_count <= self.max_dim else None

    @cached_property
    def random_vectors(self) -> List[List[Fraction]]:
        rng = np.random.default_rng(self.seed)
        draws = rng.integers(-10, 11, size=(self.samples, self.params.coset_count))
        return [[Fraction(int(v)) for v in row] for row in draws]

    # ------------------------------------------------------------------
    # Result helpers
    # ------------------------------------------------------------------

    def _result(self, name: str, witness: Optional[Dict[str, Any]] = None, **details: Any) -> CheckResult:
        status = CheckStatus.FAIL if witness is not None else CheckStatus.PASS
        if witness is not None:
            logger.error(f"Check {name} failed at {self.params.label()}: {witness}")
        return CheckResult(name=name, params=self.cell, status=status, witness=witness, details=details)

    def _skip(self, name: str, reason: str) -> CheckResult:
        logger.warning(f"Check {name} skipped at {self.params.label()}: {reason}")
        return CheckResult(
            name=name, params=self.cell, status=CheckStatus.SKIPPED, details={'reason': reason}
        )

    def _needs_base_field(self, name: str) -> Optional[CheckResult]:
        if self.params.f != 1:
            return self._skip(name, "unsupported for extensions (f > 1)")
        return None

    def _needs_next_level(self, name: str) -> Optional[CheckResult]:
        if self.next_level is None:
            return self._skip(name, f"level {self.params.k + 1} exceeds {self.max_dim} cosets")
        return None

    def _unit_maps(self) -> List[Callable[[Coset], Coset]]:
        p = self.params.p
        return [partial(unit_multiply, u=u, params=self.params) for u in units_below(p ** self.params.k, p)]

    # ------------------------------------------------------------------
    # Domain
    # ------------------------------------------------------------------

    def check_coset_count(self) -> CheckResult:
        q, m, k = self.params.q, self.params.m, self.params.k
        expected = m * (q - 1) * q ** (k - 1)
        witness = None
        if len(self.cosets) != expected or len(set(self.cosets)) != expected:
            witness = {'count': len(self.cosets), 'expected': expected}
        return self._result("coset_count", witness)

    def check_valuation_laws(self) -> CheckResult:
        """v(a - b) is symmetric and ultrametric on sampled triples."""
        sample = sample_cosets(self.cosets)
        for a, b in itertools.permutations(sample, 2):
            if valuation_of_difference(a, b) != valuation_of_difference(b, a):
                return self._result("valuation_ultrametric", {'pair': [a.to_dict(), b.to_dict()]})
        for a, b, c in itertools.permutations(sample, 3):
            if valuation_of_difference(a, c) < min(valuation_of_difference(a, b), valuation_of_difference(b, c)):
                return self._result(
                    "valuation_ultrametric", {'triple': [a.to_dict(), b.to_dict(), c.to_dict()]}
                )
        return self._result("valuation_ultrametric", sampled=len(sample))

    def check_measures(self) -> CheckResult:
        params = self.params
        q, k = params.q, params.k
        for s in range(params.m):
            layer = sum((additive_measure(c, params) for c in self.cosets if c.s == s), Fraction(0))
            if layer != layer_measure(s, q):
                return self._result("measure_totals", {'valuation': s, 'additive': render_rational(layer)})
            shells = sum((shell_measure(s, i, params) for i in range(s, s + k)), Fraction(0))
            if shells + Fraction(1, q ** (s + k)) != layer_measure(s, q):
                return self._result("measure_totals", {'valuation': s, 'shells': render_rational(shells)})
        volume = sum((multiplicative_measure(c, params) for c in self.cosets), Fraction(0))
        if volume != total_volume(params):
            return self._result("measure_totals", {'multiplicative': render_rational(volume)})
        return self._result("measure_totals")

    def check_unit_action(self) -> CheckResult:
        """Multiplication by a unit permutes cosets, keeps s and keeps v(x - y)."""
        name = "unit_multiply_bijection"
        skipped = self._needs_base_field(name)
        if skipped is not None:
            return skipped
        everything = set(self.cosets)
        sample = sample_cosets(self.cosets)
        for u in units_below(self.params.p ** self.params.k, self.params.p):
            images = [unit_multiply(c, u, self.params) for c in self.cosets]
            if set(images) != everything:
                return self._result(name, {'unit': u, 'reason': 'not a bijection'})
            if any(image.s != c.s for image, c in zip(images, self.cosets)):
                return self._result(name, {'unit': u, 'reason': 'valuation changed'})
            for a, b in itertools.combinations(sample, 2):
                ua = unit_multiply(a, u, self.params)
                ub = unit_multiply(b, u, self.params)
                if valuation_of_difference(ua, ub) != valuation_of_difference(a, b):
                    return self._result(name, {'unit': u, 'pair': [a.to_dict(), b.to_dict()]})
        return self._result(name)

    def check_reflection(self) -> CheckResult:
        name = "reflect_involution"
        skipped = self._needs_base_field(name)
        if skipped is not None:
            return skipped
        for c in self.cosets:
            image = reflect(c, self.params)
            if image.s != self.params.m - 1 - c.s or reflect(image, self.params) != c:
                return self._result(name, {'coset': c.to_dict(), 'image': image.to_dict()})
        return self._result(name)

    # ------------------------------------------------------------------
    # Operator
    # ------------------------------------------------------------------

    def check_operator_symmetric(self) -> CheckResult:
        witness = None if self.operator.is_symmetric() else {'reason': 'D != D^T'}
        return self._result("operator_symmetric", witness)

    def check_operator_row_sums(self) -> CheckResult:
        for index, row in enumerate(self.operator.entries):
            total = sum(row, Fraction(0))
            if total != 0:
                return self._result("operator_zero_row_sums", {'row': index, 'sum': render_rational(total)})
        return self._result("operator_zero_row_sums")

    def check_operator_unit_invariance(self) -> CheckResult:
        name = "operator_unit_invariance"
        skipped = self._needs_base_field(name)
        if skipped is not None:
            return skipped
        for u, mapping in zip(units_below(self.params.p ** self.params.k, self.params.p), self._unit_maps()):
            if not commutes_with_permutation(self.operator, mapping):
                return self._result(name, {'unit': u})
        return self._result(name)

    def check_operator_reflection_invariance(self) -> CheckResult:
        name = "operator_reflect_invariance"
        skipped = self._needs_base_field(name)
        if skipped is not None:
            return skipped
        ok = commutes_with_permutation(self.operator, lambda c: reflect(c, self.params))
        return self._result(name, None if ok else {'reason': 'D does not commute with reflection'})

    def check_quadratic_form(self) -> CheckResult:
        """<D f, f> <= 0 for random integer vectors (mu^x weights are uniform)."""
        vectors = self.random_vectors
        columns = [list(column) for column in zip(*vectors)]
        images = matmul(self.operator.entries, columns)
        weight = Fraction(1, self.params.q ** self.params.k)
        for index, vector in enumerate(vectors):
            value = weight * sum((images[a][index] * vector[a] for a in range(len(vector))), Fraction(0))
            if value > 0:
                return self._result(
                    "quadratic_form_nonpositive",
                    {'sample': index, 'value': render_rational(value)},
                )
        return self._result("quadratic_form_nonpositive", samples=len(vectors))

    def check_locally_constant(self) -> CheckResult:
        """D at level k+1 applied to a lifted function is the lift of D at level k."""
        name = "locally_constant_preservation"
        skipped = self._needs_next_level(name)
        if skipped is not None:
            return skipped
        assert self.next_level is not None
        finer = build_operator_matrix(self.next_level)
        samples = self.random_vectors[:3]
        indicator = [Fraction(1)] + [Fraction(0)] * (self.params.coset_count - 1)
        for index, values in enumerate(samples + [indicator]):
            fine = apply(finer, lift_function(values, self.params))
            coarse = lift_function(apply(self.operator, values), self.params)
            if fine != coarse:
                return self._result(name, {'vector': index})
        return self._result(name)

    def check_spectrum(self) -> CheckResult:
        result = spectrum(self.operator, EIGENVALUE_TOLERANCE)
        witness = None
        if result.kernel_dimension != 1 or result.largest > EIGENVALUE_TOLERANCE:
            witness = {'kernel_dimension': result.kernel_dimension, 'largest': result.largest}
        return self._result("spectrum_negative_semidefinite", witness)

    # ------------------------------------------------------------------
    # Oracle
    # ------------------------------------------------------------------

    def check_green_residual(self) -> CheckResult:
        """D G = q^k I - 1/V exactly."""
        product = RationalMatrix.from_rows(matmul(self.operator.entries, self.green.matrix.entries))
        witness = _first_mismatch(product, green_rhs(self.params))
        return self._result("green_residual_exact", witness)

    def check_green_shape(self) -> CheckResult:
        matrix = self.green.matrix
        witness = None
        if not matrix.is_symmetric():
            witness = {'reason': 'G != G^T'}
        elif matrix.max_entry() != 0:
            witness = {'max_entry': render_rational(matrix.max_entry())}
        return self._result("green_symmetric_max_zero", witness)

    def check_fiber_consistency(self) -> CheckResult:
        name = "fiber_consistency"
        skipped = self._needs_next_level(name)
        if skipped is not None:
            return skipped
        assert self.next_level is not None
        averaged = fiber_average(solve_green(self.next_level).matrix, self.params)
        difference = averaged.minus(self.green.matrix)
        if not difference.is_constant():
            return self._result(name, {'reason': 'fiber average minus G_k is not constant'})
        return self._result(name, constant=render_rational(difference[0, 0]))

    def check_green_unit_invariance(self) -> CheckResult:
        name = "green_unit_invariance"
        skipped = self._needs_base_field(name)
        if skipped is not None:
            return skipped
        for u, mapping in zip(units_below(self.params.p ** self.params.k, self.params.p), self._unit_maps()):
            if not commutes_with_permutation(self.green.matrix, mapping):
                return self._result(name, {'unit': u})
        return self._result(name)

    def check_green_reflection_invariance(self) -> CheckResult:
        name = "green_reflect_invariance"
        skipped = self._needs_base_field(name)
        if skipped is not None:
            return skipped
        ok = commutes_with_permutation(self.green.matrix, lambda c: reflect(c, self.params))
        return self._result(name, None if ok else {'reason': 'G does not commute with reflection'})

    def check_green_digit_dependence(self) -> CheckResult:
        """G(x, y) only sees the leading m - v(y) digits of x - y."""
        name = "green_digit_dependence"
        skipped = self._needs_base_field(name)
        if skipped is not None:
            return skipped
        p, m = self.params.p, self.params.m
        sample = sample_cosets(self.cosets)
        for x, y in itertools.permutations(sample, 2):
            for factor in {1, p - 1}:
                u = 1 + factor * p ** (m - y.s)
                shifted = digit_shift(x, y, u, self.params)
                if self.green.value(shifted, y) != self.green.value(x, y):
                    return self._result(
                        name,
                        {'x': x.to_dict(), 'y': y.to_dict(), 'unit': u, 'shifted': shifted.to_dict()},
                    )
        return self._result(name)

    # ------------------------------------------------------------------
    # Analytic side (depends on q and m only)
    # ------------------------------------------------------------------

    def check_c_matrix_structure(self) -> CheckResult:
        """Bisymmetry and the four-point relation of C."""
        c = c_matrix(self.params)
        m = c.dim
        for i in range(m):
            for j in range(m):
                if not (c[i, j] == c[j, i] == c[m - 1 - i, m - 1 - j]):
                    return self._result("c_matrix_structure", {'index': [i, j], 'reason': 'not bisymmetric'})
        for i, j, k in itertools.product(range(m), repeat=3):
            if c[i, j] + c[j, k] + c[k, i] != c[j, i] + c[k, j] + c[i, k]:
                return self._result("c_matrix_structure", {'triple': [i, j, k], 'reason': 'four-point'})
        return self._result("c_matrix_structure")

    def check_kms_column_sums(self) -> CheckResult:
        name = "kms_rhs_column_sums"
        if self.params.m == 1:
            return self._skip(name, "degenerate: the C-matrix system needs m >= 2")
        _, rhs = kms_system(self.params)
        for j in range(self.params.m):
            total = sum((row[j] for row in rhs), Fraction(0))
            if total != 0:
                return self._result(name, {'column': j, 'sum': render_rational(total)})
        return self._result(name)

    def check_db_column_sums(self) -> CheckResult:
        """sum_i D B(i, j) = -q/(q - 1), which balances the -1/V source."""
        q, m = self.params.q, self.params.m
        target = -Fraction(q, q - 1)
        for j in range(m):
            total = sum((db_closed_form(i, j, self.params) for i in range(m)), Fraction(0))
            if total != target:
                return self._result("db_column_sums", {'column': j, 'sum': render_rational(total)})
        return self._result("db_column_sums")

    def check_lambda_symmetry(self) -> CheckResult:
        ap = make_analytic_params(self.params)
        m = ap.m
        for n in range(1, MAX_POWER + 1):
            for r in range(m):
                if lambda_n(n, r, ap) != lambda_n(n, m - 1 - r, ap):
                    return self._result("lambda_symmetry", {'n': n, 'r': r})
        return self._result("lambda_symmetry")

    def check_b_series(self) -> CheckResult:
        """Enclosures nest as terms are added and always contain the closed form."""
        ap = make_analytic_params(self.params)
        for r in range(ap.m):
            for gap in range(1, MAX_GAP + 1):
                ell = r + gap
                exact = b_exact(r, ell, ap)
                previous = b_enclosure(r, ell, ap, 1)
                for terms in range(2, NESTING_TERMS + 1):
                    current = b_enclosure(r, ell, ap, terms)
                    if not current.within(previous) or current.radius > previous.radius:
                        return self._result("b_series", {'r': r, 'ell': ell, 'terms': terms})
                    previous = current
                for terms in (1, NESTING_TERMS, terms_for_tolerance(r, ap, self.tol)):
                    enclosure = b_enclosure(r, ell, ap, terms)
                    if not enclosure.contains(exact):
                        return self._result(
                            "b_series",
                            {'r': r, 'ell': ell, 'terms': terms, 'exact': render_rational(exact)},
                        )
        return self._result("b_series")

    def check_b_vanishing(self) -> CheckResult:
        """B is exactly 0 off equal valuations and at l = r."""
        ap = make_analytic_params(self.params)
        m = ap.m
        for i in range(m):
            for j in range(m):
                ells = [min(i, j)] if i != j else [i]
                for ell in ells:
                    value = b_value(i, j, ell, ap, self.tol)
                    if value.center != 0 or value.radius != 0:
                        return self._result("b_value_vanishing", {'i': i, 'j': j, 'ell': ell})
        return self._result("b_value_vanishing")

    # ------------------------------------------------------------------

    def checks(self) -> List[Check]:
        """Every check in report order."""
        return [
            self.check_coset_count,
            self.check_valuation_laws,
            self.check_measures,
            self.check_unit_action,
            self.check_reflection,
            self.check_operator_symmetric,
            self.check_operator_row_sums,
            self.check_operator_unit_invariance,
            self.check_operator_reflection_invariance,
            self.check_quadratic_form,
            self.check_locally_constant,
            self.check_spectrum,
            self.check_green_residual,
            self.check_green_shape,
            self.check_fiber_consistency,
            self.check_green_unit_invariance,
            self.check_green_reflection_invariance,
            self.check_green_digit_dependence,
            self.check_c_matrix_structure,
            self.check_kms_column_sums,
            self.check_db_column_sums,
            self.check_lambda_symmetry,
            self.check_b_series,
            self.check_b_vanishing,
        ]

    def run(self) -> List[CheckResult]:
        results = [check() for check in self.checks()]
        failed = sum(1 for r in results if r.status == CheckStatus.FAIL)
        logger.info(f"Invariant suite at {self.params.label()}: {len(results)} checks, {failed} failed")
        return results


def run_invariant_suite(params: Params, tol: Fraction = DEFAULT_TOLERANCE) -> List[CheckResult]:
    """Run every invariant check at one cell."""
    return InvariantSuite(params, tol).run()
