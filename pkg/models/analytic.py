"""Inputs of the analytic formula and of the shell-sum verifier."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from green_enums import ShellKind


@dataclass(frozen=True)
class AnalyticParams:
    """Exact constants of G = B + C for effective base q and torus exponent m.

    Attributes:
        q: Effective base p**f.
        m: Torus exponent.
        lambda0: q (q - 1) / (q + 1).
        u: U(r) = q^-r + q^(-m + r + 1) for r in [0, m).
        big_lambda: Lambda_i = 1 + q^-1 - q^(-i-1) - q^(-m+i) for i in [0, m).
    """
    q: int
    m: int
    lambda0: Fraction
    u: Tuple[Fraction, ...]
    big_lambda: Tuple[Fraction, ...]

    def rho(self, r: int) -> Fraction:
        """Ratio U(r) / (q + 1) of the B-series tail."""
        return self.u[r] / (self.q + 1)


@dataclass(frozen=True)
class ShellSumSpec:
    """One shell-sum evaluation: D log d or D d^n at valuations (i, j).

    ``ell`` is v(x - y); it only matters when i == j. ``depth`` is the
    number of shells summed exactly before the tail bound takes over.
    """
    kind: ShellKind
    i: int
    j: int
    ell: int
    depth: int
    n: Optional[int] = None

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise ValueError(f"Shell depth must be >= 1, got {self.depth}")
        if self.i == self.j and self.ell < self.i:
            raise ValueError(f"v(x - y) = {self.ell} is below the valuation {self.i}")
        if self.kind == ShellKind.POWER and (self.n is None or self.n < 1):
            raise ValueError(f"Power shell sums need n >= 1, got {self.n}")
