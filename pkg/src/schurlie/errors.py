"""Exception types shared across the package."""


class SchurlieError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(SchurlieError, ValueError):
    """Operands have incompatible length, degree or rank."""


class InvalidArgument(SchurlieError, ValueError):
    """An argument violates a documented precondition."""


class IndexOutOfRange(InvalidArgument):
    """A generator index exceeds the configured rank."""


class ResourceGuardExceeded(SchurlieError, RuntimeError):
    """A computation was refused (or stopped) by a built-in size guard.

    May carry a ``partial`` attribute with the results computed so far.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotInFiltration(SchurlieError, ValueError):
    """An automorphism does not lie deep enough in the Johnson filtration."""


class NoSolutionFound(SchurlieError, RuntimeError):
    """An exact linear solve has no solution over the requested ring."""


class InternalInvariantError(SchurlieError, RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class ParseError(SchurlieError, ValueError):
    """Syntax error in an input expression; carries a 1-based column."""

    def __init__(self, message, column):
        super().__init__(f"{message} (column {column})")
        self.column = column
