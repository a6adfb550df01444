"""The explicit Green's function G = B + C.

B carries the log singularity and a power series in the relative distance
d = q^-(l - r); it vanishes off equal valuations. C is an m x m matrix
depending only on the two valuations, computed by a three-term recurrence
or, independently, from a KMS-structured linear system.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from models.analytic import AnalyticParams
from models.coset import Coset
from models.params import Params
from models.tables import BoundedValue, RationalMatrix
from services.ultrametric import valuation_of_difference
from utils.errors import DegenerateSystemError, SingularSystemError
from utils.linalg import matmul, solve_exact

logger = logging.getLogger(__name__)

Rows = List[List[Fraction]]


def _qpow(q: int, exponent: int) -> Fraction:
    return Fraction(q ** exponent) if exponent >= 0 else Fraction(1, q ** -exponent)


def make_analytic_params(params: Params) -> AnalyticParams:
    """Exact lambda_0, U and Lambda for the instance (only q and m matter)."""
    q, m = params.q, params.m
    lambda0 = Fraction(q * (q - 1), q + 1)
    u = tuple(_qpow(q, -r) + _qpow(q, -m + r + 1) for r in range(m))
    big_lambda = tuple(
        1 + Fraction(1, q) - _qpow(q, -i - 1) - _qpow(q, -m + i) for i in range(m)
    )
    return AnalyticParams(q=q, m=m, lambda0=lambda0, u=u, big_lambda=big_lambda)


def lambda_n(n: int, r: int, ap: AnalyticParams) -> Fraction:
    """Coefficient of d^n in B for y of valuation r.

    lambda_n = U^n (q^(n+1) - 1) / ((q - 1)(q + 1)^n (q^n - 1)) * lambda_0
    """
    if n < 1:
        raise ValueError(f"lambda_n is defined for n >= 1, got {n}")
    q = ap.q
    return (
        ap.u[r] ** n * (q ** (n + 1) - 1)
        / ((q - 1) * (q + 1) ** n * (q ** n - 1))
        * ap.lambda0
    )


def b_tail_radius(r: int, terms: int, ap: AnalyticParams) -> Fraction:
    """Rigorous bound on the B-series remainder after ``terms`` terms.

    |lambda_n| <= lambda_0 (q + 1)/(q - 1) rho^n and |d^n - 1| <= 1, doubled.
    """
    rho = ap.rho(r)
    q = ap.q
    return 2 * ap.lambda0 * (q + 1) / (q - 1) * rho ** (terms + 1) / (1 - rho)


def _validate_b_args(i: int, j: int, ell: int) -> None:
    if i == j and ell < i:
        raise ValueError(f"v(x - y) = {ell} is below the common valuation {i}")


def b_enclosure(r: int, ell: int, ap: AnalyticParams, terms: int) -> BoundedValue:
    """B at equal valuations r, truncated after ``terms`` series terms."""
    _validate_b_args(r, r, ell)
    t = ell - r
    if t == 0:
        return BoundedValue.exact(0)
    center = -ap.lambda0 * t
    d = _qpow(ap.q, -t)
    d_power = Fraction(1)
    for n in range(1, terms + 1):
        d_power *= d
        center += lambda_n(n, r, ap) * (d_power - 1)
    return BoundedValue(center=center, radius=b_tail_radius(r, terms, ap))


def terms_for_tolerance(r: int, ap: AnalyticParams, tol: Fraction) -> int:
    """Smallest term count whose tail radius is <= tol."""
    terms = 1
    while b_tail_radius(r, terms, ap) > tol:
        terms += 1
    return terms


def b_value(i: int, j: int, ell: int, ap: AnalyticParams, tol: Fraction) -> BoundedValue:
    """Enclosure of B(x, y) for v(x) = i, v(y) = j, v(x - y) = ell.

    Raises:
        ValueError: If i == j and ell < i, or tol <= 0.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    _validate_b_args(i, j, ell)
    if i != j or ell == i:
        return BoundedValue.exact(0)
    return b_enclosure(i, ell, ap, terms_for_tolerance(i, ap, tol))


def b_exact(r: int, ell: int, ap: AnalyticParams) -> Fraction:
    """Closed form of B at equal valuations for integer t = ell - r.

    (q^(nt) - 1)/(q^n - 1) is a finite geometric sum, so the series splits into
    t geometric series: B = -lambda_0 t - lambda_0/(q-1) *
    sum_{j<t} [q g(rho q^(1+j-t)) - g(rho q^(j-t))] with g(x) = x/(1-x).
    """
    _validate_b_args(r, r, ell)
    t = ell - r
    q = ap.q
    rho = ap.rho(r)

    def g(x: Fraction) -> Fraction:
        return x / (1 - x)

    series = sum(
        (q * g(rho * _qpow(q, 1 + j - t)) - g(rho * _qpow(q, j - t)) for j in range(t)),
        Fraction(0),
    )
    return -ap.lambda0 * t - ap.lambda0 / (q - 1) * series


# ---------------------------------------------------------------------------
# C matrix
# ---------------------------------------------------------------------------

def _fill_from_first_column(first: List[Fraction]) -> Rows:
    m = len(first)
    anchor = first[m - 1]
    rows: Rows = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i >= j:
                rows[i][j] = first[i] + first[m - 1 - j] - anchor
            else:
                rows[i][j] = first[m - 1 - i] + first[j] - anchor
    return rows


@lru_cache(maxsize=128)
def _c_rows(q: int, m: int) -> Tuple[Tuple[Fraction, ...], ...]:
    if m == 1:
        return ((Fraction(0),),)
    lam = [1 + Fraction(1, q) - _qpow(q, -i - 1) - _qpow(q, -m + i) for i in range(m)]
    first = [Fraction(0)] * m
    first[m - 1] = Fraction(0)
    first[m - 2] = first[m - 1] - Fraction(q) / (m * lam[m - 2])
    for i in range(m - 3, -1, -1):
        first[i] = (
            (lam[i] + lam[i + 2]) / lam[i] * first[i + 1]
            - lam[i + 2] / lam[i] * first[i + 2]
            - Fraction(q - 1) / (m * lam[i])
        )
    return tuple(tuple(row) for row in _fill_from_first_column(first))


def c_matrix(params: Params) -> RationalMatrix:
    """C by the downward recurrence on the first column, anchored at c_{m-1,0} = 0."""
    return RationalMatrix.from_rows(_c_rows(params.q, params.m))


def kms_system(params: Params) -> Tuple[Rows, Rows]:
    """The m x m system (P - Lambda) C = (PLambda^-1 - 11^T/m) / (1 - q^-1).

    P_ij = (1 - q^-1) q^-|i-j| is a KMS matrix and Lambda = diag(P 1).

    Returns:
        (P - Lambda, right-hand side) as row lists
    """
    q, m = params.q, params.m
    scale = 1 - Fraction(1, q)
    p_rows = [[scale * _qpow(q, -abs(i - j)) for j in range(m)] for i in range(m)]
    diag = [sum(row, Fraction(0)) for row in p_rows]
    a_rows = [
        [p_rows[i][j] - (diag[i] if i == j else 0) for j in range(m)] for i in range(m)
    ]
    rhs = [
        [(p_rows[i][j] / diag[j] - Fraction(1, m)) / scale for j in range(m)]
        for i in range(m)
    ]
    return a_rows, rhs


def c_matrix_via_linear_system(params: Params) -> RationalMatrix:
    """C from the KMS system with the symmetric, c_{m-1,0} = 0 normalization.

    Raises:
        DegenerateSystemError: If m == 1.
        SingularSystemError: If the solution fails its residual or symmetry check.
    """
    m = params.m
    if m == 1:
        raise DegenerateSystemError("degenerate: the C-matrix system needs m >= 2")
    a_rows, rhs = kms_system(params)
    # Kernel of P - Lambda is the constants; fix the last row of each column at 0.
    leading = [row[:m - 1] for row in a_rows[:m - 1]]
    partial = solve_exact(leading, rhs[:m - 1])
    particular = partial + [[Fraction(0)] * m]
    shifts = [particular[j][0] - particular[0][j] for j in range(m)]
    rows = [[particular[i][j] + shifts[j] for j in range(m)] for i in range(m)]

    residual = matmul(a_rows, rows)
    if any(residual[i][j] != rhs[i][j] for i in range(m) for j in range(m)):
        raise SingularSystemError(f"C-matrix residual is nonzero for q={params.q}, m={m}")
    result = RationalMatrix.from_rows(rows)
    if not result.is_symmetric():
        raise SingularSystemError(f"C-matrix solution is not symmetric for q={params.q}, m={m}")
    return result


def db_closed_form(i: int, j: int, params: Params) -> Fraction:
    """D B(x, y) for v(x) = i, v(y) = j: -q^(1-|i-j|) / (q + 1 - q^-j - q^(j+1-m))."""
    q, m = params.q, params.m
    if not (0 <= i < m and 0 <= j < m):
        raise ValueError(f"Valuations ({i}, {j}) out of range for m={m}")
    return -_qpow(q, 1 - abs(i - j)) / (q + 1 - _qpow(q, -j) - _qpow(q, j + 1 - m))


def analytic_green(
    x: Coset,
    y: Coset,
    params: Params,
    tol: Fraction,
    ap: Optional[AnalyticParams] = None,
) -> BoundedValue:
    """Enclosure of G(x, y) = B + C for distinct cosets.

    Raises:
        UnresolvedValuationError: If the cosets coincide.
    """
    ell = valuation_of_difference(x, y)
    analytic = ap if ap is not None else make_analytic_params(params)
    c = _c_rows(params.q, params.m)
    return b_value(x.s, y.s, ell, analytic, tol) + c[x.s][y.s]
