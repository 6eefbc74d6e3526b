"""Exception types shared across the package."""


class RanklabError(Exception):
    pass


class UsageError(RanklabError, ValueError):
    """Bad arguments: shape mismatch, unknown id, mixed fields, malformed text."""


class ConfigurationError(UsageError):
    """The run configuration cannot support a request (e.g. a missing radicand)."""


class ArithmeticFault(RanklabError, ZeroDivisionError):
    pass


class SingularMatrixError(ArithmeticFault):
    pass


class NotGroupInvertibleError(RanklabError):
    pass


class NoSolutionError(RanklabError):
    pass


class PreconditionError(RanklabError):
    """An input does not satisfy the hypothesis a routine needs."""
