"""Exception hierarchy shared by all vorocell modules."""


class VorocellError(Exception):
    """Base class for every error raised by this package."""


class DomainError(VorocellError, ValueError):
    """A numeric argument lies outside the domain of the operation."""


class ZeroVector(VorocellError, ValueError):
    """A direction was requested for a vector of norm zero."""


class ZeroSum(VorocellError, ValueError):
    """The sum of two vectors vanished where a non-zero sum is required."""


class DimensionMismatch(VorocellError, ValueError):
    pass


class NoSignChange(VorocellError, ValueError):
    """Bisection was started on a bracket without opposite signs."""


class BadOrigin(VorocellError, ValueError):
    """A ray origin does not lie strictly inside the dominance region."""


class NotOnBisector(VorocellError, ValueError):
    pass


class PreconditionFailed(VorocellError):
    """A verification gate (separation or uniform convexity) failed."""


class SceneParseError(VorocellError, ValueError):
    """A scene document could not be parsed.

    ``line`` and ``column`` are 1-based when the failure can be tied to a
    position in the source text; ``path`` names the offending JSON member.
    """

    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if path:
            where.append(f"at {path}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
