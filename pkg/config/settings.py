"""Default tolerances, grids and paths."""
from fractions import Fraction
from pathlib import Path
from typing import List

from models.params import Params

PROJECT_ROOT = Path(__file__).resolve().parent.parent

DEFAULT_TOLERANCE_TEXT = "1/10^12"
DEFAULT_TOLERANCE = Fraction(1, 10 ** 12)
SHELL_SUM_TOLERANCE = Fraction(1, 10 ** 10)
EIGENVALUE_TOLERANCE = 1e-9

# Largest coset count the dense exact oracle is asked to solve.
MAX_ORACLE_DIM = 600

# Green tables kept in memory; suites only revisit levels k and k + 1.
ORACLE_CACHE_SIZE = 2

# Upper level for stabilized_value when the caller gives none.
DEFAULT_K_MAX = 6

# Random test vectors per cell for the quadratic-form check.
QUADRATIC_FORM_SAMPLES = 100
RANDOM_SEED = 20240601

FIXTURE_PRIMES = (2, 3, 5)
FIXTURE_SIZES = range(2, 8)
LINEAR_SYSTEM_PRIMES = (2, 3, 5, 7)
LINEAR_SYSTEM_SIZES = range(2, 11)

# (p, f) pairs giving q in {2, 3, 4, 5} for the closed-form checks.
CLOSED_FORM_BASES = ((2, 1), (3, 1), (2, 2), (5, 1))
CLOSED_FORM_SIZES = range(1, 5)

FIXTURE_DIR = PROJECT_ROOT / "verification" / "fixtures"
C_MATRIX_FIXTURE = FIXTURE_DIR / "c_matrices.json"


def acceptance_grid(max_dim: int = MAX_ORACLE_DIM) -> List[Params]:
    """Oracle cells p in {2,3}, f in {1,2}, m in {1,2,3}, k in 1..5 with dim <= max_dim."""
    cells: List[Params] = []
    for p in (2, 3):
        for f in (1, 2):
            for m in (1, 2, 3):
                for k in range(1, 6):
                    cell = Params(p=p, f=f, m=m, k=k)
                    if cell.coset_count <= max_dim:
                        cells.append(cell)
    return cells
