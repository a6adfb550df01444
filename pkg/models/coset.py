"""Cosets of the finite quotient E_k."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Tuple


@dataclass(frozen=True, order=True)
class Coset:
    """A point of E_k: valuation ``s`` and ``k`` digits, leading digit nonzero.

    The represented ball is pi^s (d0 + d1 pi + ... + d_{k-1} pi^{k-1}) + pi^{s+k} O.
    Ordering is lexicographic by (s, digits), which is the canonical matrix
    index order everywhere.
    """
    s: int
    digits: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.s < 0:
            raise ValueError(f"Valuation must be non-negative, got {self.s}")
        if not self.digits:
            raise ValueError("A coset needs at least one digit")
        if self.digits[0] == 0:
            raise ValueError(f"Leading digit must be nonzero: {self.digits}")

    @property
    def level(self) -> int:
        return len(self.digits)

    def to_dict(self) -> Dict[str, Any]:
        """JSON form {"s": int, "digits": [int, ...]}."""
        return {'s': self.s, 'digits': list(self.digits)}

    def to_string(self, q: int) -> str:
        """Compact form ``s:d0d1...``; digits are '.'-separated when q > 10."""
        joiner = '.' if q > 10 else ''
        return f"{self.s}:{joiner.join(str(d) for d in self.digits)}"

    @classmethod
    def from_string(cls, text: str, q: int) -> "Coset":
        """Inverse of ``to_string``."""
        head, sep, tail = text.partition(':')
        if not sep or not tail:
            raise ValueError(f"Coset string must look like 's:digits', got {text!r}")
        parts = tail.split('.') if q > 10 else list(tail)
        digits = tuple(int(d) for d in parts)
        if any(d < 0 or d >= q for d in digits):
            raise ValueError(f"Digits of {text!r} out of range for q={q}")
        return cls(s=int(head), digits=digits)
