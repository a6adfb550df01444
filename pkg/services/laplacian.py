"""The flat Laplacian D on level-k locally constant functions.

For a level-k function phi the integral defining D phi(x) splits over the
cosets z != x, each contributing |x| mu+(z) / |z - x|^2 times
(phi(z) - phi(x)). That gives an exact rational matrix with entries
q^(-s_x - s_z - k + 2 v(z - x)) off the diagonal and zero row sums.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence

import numpy as np

from models.coset import Coset
from models.params import Params
from models.tables import RationalMatrix, SampledFunction
from services.ultrametric import enumerate_cosets, lifts, valuation_of_difference
from utils.errors import AsymmetricMatrixError, DimensionMismatchError, LevelMismatchError
from utils.linalg import exact_rank, matvec

logger = logging.getLogger(__name__)


def _power(q: int, exponent: int) -> Fraction:
    return Fraction(q ** exponent) if exponent >= 0 else Fraction(1, q ** -exponent)


def build_operator_matrix(params: Params) -> RationalMatrix:
    """Exact matrix of D on E_k in canonical coset order."""
    order = enumerate_cosets(params)
    q, k = params.q, params.k
    n = len(order)
    rows: List[List[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        x = order[a]
        for b in range(a + 1, n):
            z = order[b]
            v = valuation_of_difference(x, z)
            weight = _power(q, 2 * v - x.s - z.s - k)
            rows[a][b] = weight
            rows[b][a] = weight
    for a in range(n):
        rows[a][a] = -sum(rows[a], Fraction(0))
    logger.info(f"Built {n}x{n} operator matrix for {params.label()}")
    return RationalMatrix.from_rows(rows, order)


def apply(matrix: RationalMatrix, values: Sequence[Fraction]) -> SampledFunction:
    """Exact product of a matrix with a sampled function.

    Raises:
        DimensionMismatchError: If the lengths differ.
    """
    if len(values) != matrix.dim:
        raise DimensionMismatchError(
            f"Function has {len(values)} samples but the matrix is {matrix.dim}x{matrix.dim}"
        )
    return matvec(matrix.entries, [Fraction(v) for v in values])


@dataclass
class SpectrumResult:
    """Float eigenvalues (ascending) and the exact kernel dimension."""
    eigenvalues: List[float]
    kernel_dimension: int

    @property
    def largest(self) -> float:
        return self.eigenvalues[-1]

    def to_dict(self) -> dict:
        return {
            'eigenvalues': [float(v) for v in self.eigenvalues],
            'kernel_dimension': self.kernel_dimension,
        }


def spectrum(matrix: RationalMatrix, tol: float = 1e-9) -> SpectrumResult:
    """Eigenvalues of a symmetric matrix plus its exact kernel dimension.

    Args:
        matrix: Symmetric rational matrix
        tol: Eigenvalues above this are reported as a positivity warning

    Raises:
        AsymmetricMatrixError: If the matrix is not exactly symmetric.
    """
    if not matrix.is_symmetric():
        raise AsymmetricMatrixError(f"Spectrum needs a symmetric matrix ({matrix.dim}x{matrix.dim} given)")
    eigenvalues = np.linalg.eigvalsh(matrix.to_numpy())
    kernel = matrix.dim - exact_rank(matrix.entries)
    result = SpectrumResult(eigenvalues=sorted(float(v) for v in eigenvalues), kernel_dimension=kernel)
    if result.largest > tol:
        logger.warning(f"Largest eigenvalue {result.largest:.3e} exceeds tolerance {tol:.1e}")
    return result


def _lift_indices(table: RationalMatrix, params: Params) -> List[List[int]]:
    if table.order is None:
        raise LevelMismatchError("Fiber averaging needs a coset-indexed table")
    expected = params.at_level(params.k + 1).coset_count
    if table.dim != expected:
        raise LevelMismatchError(
            f"Table has dimension {table.dim}; level {params.k + 1} has {expected} cosets"
        )
    return [[table.index_of(c) for c in lifts(x, params.q)] for x in enumerate_cosets(params)]


def fiber_average(table: RationalMatrix, params: Params) -> RationalMatrix:
    """Average a level-(k+1) table over the q x q lifts of each level-k pair.

    ``params`` describes the target level k.
    """
    groups = _lift_indices(table, params)
    scale = Fraction(1, params.q ** 2)
    rows = [
        [
            scale * sum((table.entries[a][b] for a in gx for b in gy), Fraction(0))
            for gy in groups
        ]
        for gx in groups
    ]
    return RationalMatrix.from_rows(rows, enumerate_cosets(params))


def lift_function(values: Sequence[Fraction], params: Params) -> SampledFunction:
    """Pull a level-k function back to level k+1 (constant on fibers)."""
    if len(values) != params.coset_count:
        raise DimensionMismatchError(f"Expected {params.coset_count} samples, got {len(values)}")
    return [Fraction(v) for v in values for _ in range(params.q)]


def restrict_function(values: Sequence[Fraction], params: Params) -> SampledFunction:
    """Push a fiber-constant level-(k+1) function down to level k.

    Raises:
        ValueError: If some fiber is not constant.
    """
    q = params.q
    if len(values) != params.coset_count * q:
        raise DimensionMismatchError(f"Expected {params.coset_count * q} samples, got {len(values)}")
    restricted: SampledFunction = []
    for start in range(0, len(values), q):
        fiber = values[start:start + q]
        if any(v != fiber[0] for v in fiber):
            raise ValueError(f"Function is not constant on the fiber starting at index {start}")
        restricted.append(Fraction(fiber[0]))
    return restricted


def quadratic_form(matrix: RationalMatrix, values: Sequence[Fraction], params: Params) -> Fraction:
    """<D f, f> under the mu^x-weighted pairing (uniform weight q^-k)."""
    image = apply(matrix, values)
    weight = Fraction(1, params.q ** params.k)
    return weight * sum((a * Fraction(b) for a, b in zip(image, values)), Fraction(0))


def commutes_with_permutation(matrix: RationalMatrix, mapping: Callable[[Coset], Coset]) -> bool:
    """True if M[sigma(a), sigma(b)] == M[a, b] for the coset map sigma."""
    if matrix.order is None:
        raise LevelMismatchError("Permutation checks need a coset-indexed matrix")
    image = [matrix.index_of(mapping(c)) for c in matrix.order]
    n = matrix.dim
    if len(set(image)) != n:
        return False
    return all(
        matrix.entries[image[a]][image[b]] == matrix.entries[a][b]
        for a in range(n)
        for b in range(n)
    )
