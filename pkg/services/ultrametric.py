"""The fundamental domain E and its finite quotients E_k as coset trees.

E is the union of pi^s O^x for 0 <= s < m. A level-k coset fixes the
valuation and the first k digits of the unit part, so everything the
operator needs (norms, measures, v(x - z)) is read off the digit strings.
Ring operations (multiplying by a unit, inverting) need actual integers and
exist only over Q_p, i.e. for f = 1.
"""
from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from math import gcd
from typing import List

from models.coset import Coset
from models.params import Params
from utils.errors import (
    LevelMismatchError,
    UnresolvedValuationError,
    UnsupportedForExtensionError,
)

logger = logging.getLogger(__name__)


def enumerate_cosets(params: Params) -> List[Coset]:
    """All level-k cosets in canonical (s, digits) lexicographic order."""
    q = params.q
    cosets = [
        Coset(s=s, digits=(lead,) + tail)
        for s in range(params.m)
        for lead in range(1, q)
        for tail in itertools.product(range(q), repeat=params.k - 1)
    ]
    logger.debug(f"Enumerated {len(cosets)} cosets for {params.label()}")
    return cosets


def valuation_of_difference(a: Coset, b: Coset) -> int:
    """v(z - x) for any representatives z of ``a`` and x of ``b``.

    Raises:
        UnresolvedValuationError: If the cosets coincide (v >= s + k).
    """
    if a.s != b.s:
        return min(a.s, b.s)
    for index, (da, db) in enumerate(zip(a.digits, b.digits)):
        if da != db:
            return a.s + index
    raise UnresolvedValuationError(
        f"valuation unresolved at this level: {a.to_dict()} and {b.to_dict()} coincide"
    )


def _check_level(c: Coset, params: Params) -> None:
    if c.level != params.k:
        raise LevelMismatchError(f"Coset {c.to_dict()} has level {c.level}, expected {params.k}")


def additive_measure(c: Coset, params: Params) -> Fraction:
    """mu+ of the ball pi^s(unit) + pi^(s+k) O, i.e. q^(-s-k)."""
    _check_level(c, params)
    return Fraction(1, params.q ** (c.s + params.k))


def multiplicative_measure(c: Coset, params: Params) -> Fraction:
    """mu^x of a level-k coset: additive measure over |x|, uniformly q^-k."""
    _check_level(c, params)
    return Fraction(1, params.q ** params.k)


def total_volume(params: Params) -> Fraction:
    """V = mu^x(E) = m (1 - q^-1)."""
    return params.m * (1 - Fraction(1, params.q))


def shell_measure(r: int, i: int, params: Params) -> Fraction:
    """mu+ of the shell {z : v(z) = r, v(z - y) = i} around a point y of valuation r."""
    return shell_measure_for_base(r, i, params.q)


def shell_measure_for_base(r: int, i: int, q: int) -> Fraction:
    """``shell_measure`` for a bare effective base q."""
    if i < r:
        raise ValueError(f"Shell index {i} is below the valuation {r}")
    if i == r:
        return Fraction(q - 2, q ** (r + 1))
    return Fraction(q - 1, q ** (i + 1))


def layer_measure(s: int, q: int) -> Fraction:
    """mu+ of pi^s O^x, i.e. (q - 1) q^(-s-1)."""
    return Fraction(q - 1, q ** (s + 1))


def lifts(c: Coset, q: int) -> List[Coset]:
    """The q level-(k+1) cosets lying over ``c``."""
    return [Coset(s=c.s, digits=c.digits + (d,)) for d in range(q)]


def lift_to_level(c: Coset, level: int) -> Coset:
    """Canonical lift appending zero digits."""
    if level < c.level:
        raise LevelMismatchError(f"Cannot lift a level-{c.level} coset down to level {level}")
    return Coset(s=c.s, digits=c.digits + (0,) * (level - c.level))


# ---------------------------------------------------------------------------
# Ring operations over Q_p (f = 1)
# ---------------------------------------------------------------------------

def _require_base_field(params: Params) -> None:
    if params.f != 1:
        raise UnsupportedForExtensionError(
            f"unsupported for extensions: ring arithmetic needs f = 1, got f = {params.f}"
        )


def unit_part(c: Coset, p: int) -> int:
    """Integer d0 + d1 p + ... + d_{k-1} p^{k-1}."""
    return sum(d * p ** index for index, d in enumerate(c.digits))


def integer_representative(c: Coset, params: Params) -> int:
    """Integer sum of digits[i] p^(s+i)."""
    _require_base_field(params)
    return params.p ** c.s * unit_part(c, params.p)


def coset_of_unit(s: int, unit: int, params: Params) -> Coset:
    """Coset of pi^s * unit at level k; the unit is read modulo p^k."""
    p, k = params.p, params.k
    value = unit % p ** k
    digits = []
    for _ in range(k):
        value, digit = divmod(value, p)
        digits.append(digit)
    return Coset(s=s, digits=tuple(digits))


def unit_multiply(c: Coset, u: int, params: Params) -> Coset:
    """Coset of u * x for a p-adic unit u.

    Raises:
        UnsupportedForExtensionError: If f > 1.
        ValueError: If p divides u.
    """
    _require_base_field(params)
    if gcd(u, params.p) != 1:
        raise ValueError(f"{u} is not a unit modulo {params.p}")
    return coset_of_unit(c.s, u * unit_part(c, params.p), params)


def reflect(c: Coset, params: Params) -> Coset:
    """Coset of p^(m-1) / x: valuation m-1-s, unit part inverted mod p^k."""
    _require_base_field(params)
    modulus = params.p ** params.k
    inverse = pow(unit_part(c, params.p), -1, modulus)
    return coset_of_unit(params.m - 1 - c.s, inverse, params)


def digit_shift(x: Coset, y: Coset, u: int, params: Params) -> Coset:
    """Coset of y + u (x - y) for a unit u = 1 mod p^(m - v(y)).

    The result has the valuation of x and a difference with y agreeing with
    x - y in its leading m - v(y) digits.
    """
    _require_base_field(params)
    p, k = params.p, params.k
    if (u - 1) % p ** (params.m - y.s) != 0:
        raise ValueError(f"u = {u} is not 1 modulo p^{params.m - y.s}")
    # (1 - u) y lies in p^m Z and is known mod p^(m + k), which covers p^(s_x + k).
    modulus = p ** (x.s + k)
    value = (u * integer_representative(x, params) + (1 - u) * integer_representative(y, params)) % modulus
    return coset_of_unit(x.s, value // p ** x.s, params)
