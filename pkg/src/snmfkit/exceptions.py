"""Exception types raised across the package.

Everything derives from :class:`SnmfError` so callers can catch package
failures with a single except clause while still distinguishing the
specific condition.
"""


class SnmfError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(SnmfError, ValueError):
    """Operands have incompatible shapes."""


class NonFiniteError(SnmfError, FloatingPointError):
    """A NaN or infinity appeared where finite values are required."""


class NotPositiveDefiniteError(SnmfError, ValueError):
    """Cholesky factorization hit a nonpositive pivot."""


class InvalidKError(SnmfError, ValueError):
    """Requested number of clusters is out of range."""


class TooFewPointsError(SnmfError, ValueError):
    """Dataset has fewer points than the neighbor rule needs."""


class DegenerateScaleError(SnmfError, ValueError):
    """A local scale is zero, i.e. a point has duplicates up to rank p."""


class IsolatedVertexError(SnmfError, ValueError):
    """A vertex has zero degree, so degree normalization is undefined."""


class LengthMismatchError(SnmfError, ValueError):
    """Paired sequences (e.g. label vectors) differ in length."""


class ParseError(SnmfError, ValueError):
    """An input file failed to parse.

    When the failure is attributable to a specific line, ``line`` holds
    its 1-based number and the message is prefixed with it.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class RaggedRowsError(ParseError):
    """Rows of a points file disagree on the number of columns."""


class AsymmetricConflictError(ParseError):
    """Conflicting values were given for the same symmetric entry."""


class NegativeWeightError(ParseError):
    """An edge weight is negative."""


class IndexOutOfRangeError(ParseError):
    """A vertex index falls outside [0, n)."""
