"""Closed forms for D log d and D d^n, and an independent shell-sum evaluator.

The closed forms are the two-case formulas (distinct vs. equal valuations).
The shell-sum evaluator recomputes the same integrals by splitting E into
valuation layers and the shells around x and y, summing a finite number of
shells exactly and bounding the rest by a geometric series.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Callable, Optional

from green_enums import ShellKind
from models.analytic import AnalyticParams, ShellSumSpec
from models.tables import BoundedValue
from services.analytic import lambda_n
from services.ultrametric import layer_measure, shell_measure_for_base

logger = logging.getLogger(__name__)

# |D d^n| <= 6 for every n >= 2 at every (i, j, l); see combined_db_enclosure.
POWER_IMAGE_BOUND = 6


def _qpow(q: int, exponent: int) -> Fraction:
    return Fraction(q ** exponent) if exponent >= 0 else Fraction(1, q ** -exponent)


def _check_ell(i: int, j: int, ell: int) -> None:
    if i == j and ell < i:
        raise ValueError(f"v(x - y) = {ell} is below the common valuation {i}")


def d_log_closed(i: int, j: int, ell: int, ap: AnalyticParams) -> Fraction:
    """D_x log_q d(x, y) for v(x) = i, v(y) = j, v(x - y) = ell."""
    _check_ell(i, j, ell)
    q = ap.q
    if i != j:
        return -_qpow(q, -abs(i - j)) / (q - 1)
    return -Fraction(1, q - 1) - ap.u[j] / q * (ell - j)


def d_power_closed(n: int, i: int, j: int, ell: int, ap: AnalyticParams) -> Fraction:
    """D_x d(x, y)^n for v(x) = i, v(y) = j, v(x - y) = ell."""
    if n < 1:
        raise ValueError(f"Power must be >= 1, got {n}")
    _check_ell(i, j, ell)
    q = ap.q
    if i != j:
        return -Fraction(q ** n - 1, q ** (n + 1) - 1) * _qpow(q, -abs(i - j))

    t = ell - j
    u = ap.u[j]
    if n == 1:
        return -Fraction(1, q + 1) - u / q * (1 - _qpow(q, -t)) + Fraction(q - 1, q) * t
    return (
        (_qpow(q, n - 1) - Fraction(1, q)) / (q ** (n - 1) - 1)
        - u / q * (1 - _qpow(q, -n * t))
        - Fraction((q + 1) * (q ** n - 1) ** 2, q * (q ** (n - 1) - 1) * (q ** (n + 1) - 1))
        * _qpow(q, (1 - n) * t)
    )


# ---------------------------------------------------------------------------
# Shell sums
# ---------------------------------------------------------------------------

def _profile(spec: ShellSumSpec, q: int) -> Callable[[int], Fraction]:
    """F evaluated at d = q^-e."""
    if spec.kind == ShellKind.LOG:
        return lambda e: Fraction(-e)
    power = spec.n if spec.n is not None else 1
    return lambda e: _qpow(q, -power * e)


def _tail_bound(spec: ShellSumSpec, weight: Fraction, q: int) -> Fraction:
    """Bound on sum_{u > N} weight q^-u |F difference| after N = depth shells."""
    x = Fraction(1, q)
    depth = spec.depth
    if spec.kind == ShellKind.LOG:
        # |difference| = u and sum_{u > N} u x^u <= (N + 1) x^(N+1) / (1 - x)^2.
        return weight * (depth + 1) * x ** (depth + 1) / (1 - x) ** 2
    return weight * x ** (depth + 1) / (1 - x)


def _outer_shells(spec: ShellSumSpec, base: int, offset: int, scale: Fraction, q: int) -> BoundedValue:
    """sum_{t > base} (q-1) q^(-t-1) (F(t - offset) - F(base - offset)) * scale."""
    profile = _profile(spec, q)
    reference = profile(base - offset)
    partial = Fraction(0)
    for t in range(base + 1, base + spec.depth + 1):
        partial += shell_measure_for_base(offset, t, q) * (profile(t - offset) - reference) * scale
    weight = scale * Fraction(q - 1, q ** (base + 1))
    return BoundedValue(center=partial, radius=_tail_bound(spec, weight, q))


def shell_sum_reference(spec: ShellSumSpec, ap: AnalyticParams) -> BoundedValue:
    """Enclosure of D log d or D d^n from shell measures and integrand values only.

    For v(x) != v(y) only z with v(z) = v(y) see d != 1, and |z - x| is
    max(|x|, |y|) there. For equal valuations r the integral splits into the
    other valuation layers, the shells of x strictly inside v(x - y), and the
    shells of y strictly beyond v(x - y); the shell of x at v(x - y) reduces
    to those shells of y because the integrand vanishes on the rest of it.
    """
    q, m = ap.q, ap.m
    i, j, ell = spec.i, spec.j, spec.ell
    profile = _profile(spec, q)

    if i != j:
        scale = _qpow(q, 2 * min(i, j) - i)
        return _outer_shells(spec, base=j, offset=j, scale=scale, q=q)

    r = j
    at_x = profile(ell - r)
    total = Fraction(0)
    for s in range(m):
        if s != r:
            total += (profile(0) - at_x) * layer_measure(s, q) * _qpow(q, 2 * min(r, s) - r)
    for shell in range(r, ell):
        total += shell_measure_for_base(r, shell, q) * (profile(shell - r) - at_x) * _qpow(q, 2 * shell - r)
    outer = _outer_shells(spec, base=ell, offset=r, scale=_qpow(q, 2 * ell - r), q=q)
    return outer + total


def shell_sum_to_tolerance(
    kind: ShellKind,
    i: int,
    j: int,
    ell: int,
    ap: AnalyticParams,
    tol: Fraction,
    n: Optional[int] = None,
) -> BoundedValue:
    """Shell sum at the smallest depth whose radius is <= tol.

    The tail radius never grows with depth, so doubling brackets the answer
    and bisection finds it.
    """
    def at_depth(depth: int) -> BoundedValue:
        return shell_sum_reference(ShellSumSpec(kind=kind, i=i, j=j, ell=ell, depth=depth, n=n), ap)

    lo, hi = 0, 1
    best = at_depth(hi)
    while best.radius > tol:
        lo, hi = hi, hi * 2
        best = at_depth(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        value = at_depth(mid)
        if value.radius <= tol:
            hi, best = mid, value
        else:
            lo = mid
    logger.debug(f"Shell sum {kind.value} (n={n}) at ({i},{j},{ell}) used depth {hi}")
    return best


# ---------------------------------------------------------------------------
# lambda-weighted combination
# ---------------------------------------------------------------------------

def combined_tail_radius(j: int, terms: int, ap: AnalyticParams) -> Fraction:
    """Bound on sum_{n > terms} |lambda_n D d^n|.

    For n >= 2 the three equal-valuation terms of D d^n are bounded by 3/2, 1
    and 3; distinct valuations give at most 1. With
    |lambda_n| <= lambda_0 (q+1)/(q-1) rho^n the tail is geometric.
    """
    q = ap.q
    rho = ap.rho(j)
    return POWER_IMAGE_BOUND * ap.lambda0 * (q + 1) / (q - 1) * rho ** (terms + 1) / (1 - rho)


def combined_db_enclosure(i: int, j: int, ell: int, ap: AnalyticParams, tol: Fraction) -> BoundedValue:
    """lambda_0 D log d + sum_n lambda_n(y) D d^n, which is D B(x, y)."""
    _check_ell(i, j, ell)
    terms = 1
    while combined_tail_radius(j, terms, ap) > tol:
        terms += 1
    center = ap.lambda0 * d_log_closed(i, j, ell, ap)
    for n in range(1, terms + 1):
        center += lambda_n(n, j, ap) * d_power_closed(n, i, j, ell, ap)
    return BoundedValue(center=center, radius=combined_tail_radius(j, terms, ap))
