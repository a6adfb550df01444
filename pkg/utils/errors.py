"""Domain errors raised by the computational services."""


class UnresolvedValuationError(ValueError):
    """Raised when v(x - y) is asked for two identical cosets."""


class UnsupportedForExtensionError(ValueError):
    """Raised by ring operations that only exist over Q_p (f = 1)."""


class DimensionMismatchError(ValueError):
    """Raised when a vector or matrix does not match the coset count."""


class LevelMismatchError(ValueError):
    """Raised when a table is indexed by cosets of an unexpected level."""


class SingularSystemError(ValueError):
    """Raised when an exact solve finds no pivot where one must exist."""


class NotStabilizedError(ValueError):
    """Raised when consecutive levels never agree before k_max."""


class DegenerateSystemError(ValueError):
    """Raised when the C-matrix linear system is requested for m = 1."""


class AsymmetricMatrixError(ValueError):
    """Raised when a routine that needs a symmetric matrix receives another."""
