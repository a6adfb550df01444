"""Exact matrices, Green tables and rigorous enclosures."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from green_enums import Normalization
from models.coset import Coset
from models.params import Params
from utils.errors import DimensionMismatchError

Number = Union[int, Fraction]

# A level-k function sampled in canonical coset order.
SampledFunction = List[Fraction]


@dataclass(frozen=True)
class RationalMatrix:
    """Dense square matrix of exact rationals.

    ``order`` is the canonical coset order indexing rows and columns. It is
    ``None`` for matrices indexed by valuations (the m x m C matrix).
    """
    entries: Tuple[Tuple[Fraction, ...], ...]
    order: Optional[Tuple[Coset, ...]] = None
    _index: Dict[Coset, int] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise DimensionMismatchError(f"Matrix with {n} rows is not square")
        if self.order is not None:
            if len(self.order) != n:
                raise DimensionMismatchError(
                    f"Index order has {len(self.order)} cosets for a {n}x{n} matrix"
                )
            self._index.update({c: i for i, c in enumerate(self.order)})

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[Number]],
        order: Optional[Sequence[Coset]] = None,
    ) -> "RationalMatrix":
        """Build from any nested sequence of ints/Fractions."""
        entries = tuple(tuple(Fraction(x) for x in row) for row in rows)
        return cls(entries=entries, order=tuple(order) if order is not None else None)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        i, j = key
        return self.entries[i][j]

    def index_of(self, coset: Coset) -> int:
        """Canonical index of a coset; KeyError if it does not index this matrix."""
        return self._index[coset]

    def entry(self, x: Coset, y: Coset) -> Fraction:
        """Entry addressed by cosets."""
        return self.entries[self._index[x]][self._index[y]]

    def rows(self) -> List[List[Fraction]]:
        """Mutable copy of the entries."""
        return [list(row) for row in self.entries]

    def is_symmetric(self) -> bool:
        n = self.dim
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(n)
            for j in range(i + 1, n)
        )

    def max_entry(self) -> Fraction:
        return max(max(row) for row in self.entries)

    def is_constant(self) -> bool:
        """True if every entry equals the (0, 0) entry."""
        first = self.entries[0][0]
        return all(x == first for row in self.entries for x in row)

    def shifted(self, delta: Number) -> "RationalMatrix":
        """Add the same constant to every entry."""
        d = Fraction(delta)
        return RationalMatrix(
            entries=tuple(tuple(x + d for x in row) for row in self.entries),
            order=self.order,
        )

    def minus(self, other: "RationalMatrix") -> "RationalMatrix":
        """Entrywise difference; shapes must agree."""
        if other.dim != self.dim:
            raise DimensionMismatchError(f"Cannot subtract {other.dim}x{other.dim} from {self.dim}x{self.dim}")
        return RationalMatrix(
            entries=tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
            order=self.order,
        )

    def to_numpy(self) -> np.ndarray:
        """Float64 copy for spectral work."""
        return np.array([[float(x) for x in row] for row in self.entries], dtype=np.float64)


@dataclass(frozen=True)
class GreenTable:
    """Symmetric level-k Green table together with its normalization rule."""
    params: Params
    matrix: RationalMatrix
    normalization: Normalization = Normalization.MAX_ZERO
    anchor: Optional[Tuple[int, int]] = None

    def value(self, x: Coset, y: Coset) -> Fraction:
        return self.matrix.entry(x, y)


@dataclass(frozen=True)
class BoundedValue:
    """Closed interval [center - radius, center + radius] with exact endpoints."""
    center: Fraction
    radius: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise ValueError(f"Radius must be non-negative, got {self.radius}")

    @classmethod
    def exact(cls, value: Number) -> "BoundedValue":
        return cls(center=Fraction(value), radius=Fraction(0))

    @property
    def lower(self) -> Fraction:
        return self.center - self.radius

    @property
    def upper(self) -> Fraction:
        return self.center + self.radius

    def __add__(self, other: Union["BoundedValue", Number]) -> "BoundedValue":
        if isinstance(other, BoundedValue):
            return BoundedValue(self.center + other.center, self.radius + other.radius)
        return BoundedValue(self.center + Fraction(other), self.radius)

    __radd__ = __add__

    def __neg__(self) -> "BoundedValue":
        return BoundedValue(-self.center, self.radius)

    def __sub__(self, other: Union["BoundedValue", Number]) -> "BoundedValue":
        return self + (-other)

    def scaled(self, factor: Number) -> "BoundedValue":
        f = Fraction(factor)
        return BoundedValue(self.center * f, self.radius * abs(f))

    def contains(self, value: Number) -> bool:
        return self.lower <= Fraction(value) <= self.upper

    def overlaps(self, other: "BoundedValue") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def within(self, other: "BoundedValue") -> bool:
        """True if this interval is nested inside ``other``."""
        return other.lower <= self.lower and self.upper <= other.upper

    def to_dict(self) -> Dict[str, str]:
        return {
            'center': f"{self.center.numerator}/{self.center.denominator}",
            'radius': f"{self.radius.numerator}/{self.radius.denominator}",
        }
