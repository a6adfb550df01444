"""Problem-instance parameters."""
from __future__ import annotations

from typing import Any, Dict

from pydantic import BaseModel, ConfigDict, field_validator


def is_prime(n: int) -> bool:
    """Trial-division primality test for the small primes used here."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    divisor = 3
    while divisor * divisor <= n:
        if n % divisor == 0:
            return False
        divisor += 2
    return True


class Params(BaseModel):
    """A problem instance: prime p, residue degree f, torus exponent m, level k.

    The ramification index ``e`` is recorded but never enters a formula; every
    computation depends on the extension only through the effective base
    ``q = p**f``.
    """
    model_config = ConfigDict(frozen=True)

    p: int
    f: int = 1
    e: int = 1
    m: int
    k: int = 1

    @field_validator('p')
    @classmethod
    def validate_prime(cls, v: int) -> int:
        """Reject non-prime p."""
        if not is_prime(v):
            raise ValueError(f"p must be prime, got {v}")
        return v

    @field_validator('f', 'e', 'm', 'k')
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Residue degree, ramification index, torus exponent and level are >= 1."""
        if v < 1:
            raise ValueError(f"must be a positive integer, got {v}")
        return v

    @property
    def q(self) -> int:
        """Effective base q = p**f (size of the residue field)."""
        return int(self.p ** self.f)

    @property
    def coset_count(self) -> int:
        """Number of level-k cosets, m (q - 1) q^(k - 1)."""
        return self.m * (self.q - 1) * self.q ** (self.k - 1)

    def at_level(self, k: int) -> "Params":
        """Same instance at another level."""
        return Params(p=self.p, f=self.f, e=self.e, m=self.m, k=k)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary (q included)."""
        return {
            'p': self.p,
            'f': self.f,
            'e': self.e,
            'm': self.m,
            'k': self.k,
            'q': self.q,
        }

    def label(self) -> str:
        """Short human-readable tag used in logs."""
        return f"p={self.p} f={self.f} m={self.m} k={self.k}"
