"""Exception hierarchy shared by all xlab modules.

The CLI maps these onto exit codes: ValidationError -> 2,
PreconditionError -> 3, I/O failures -> 4.
"""


class XlabError(Exception):
    """Base class for all xlab errors."""


class ValidationError(XlabError, ValueError):
    """Bad parameters, unknown names, domain violations, length mismatches."""


class PreconditionError(XlabError):
    """A documented precondition does not hold for otherwise valid input."""


class DimensionTooLargeError(PreconditionError):
    """Exhaustive enumeration requested above the hard cap."""


class NotInformationSetError(PreconditionError):
    """Symbol positions do not carry full rank of the generator."""


class AlphaTooSmallError(PreconditionError):
    """Mixing slack alpha below the lambda/(2*sigma*Delta) threshold."""


class RetryExhaustedError(PreconditionError):
    """Simple-graph resampling hit the retry cap."""


class NoConvergenceError(PreconditionError):
    """Iterative eigensolver did not reach the tolerance in time."""


class RootNotFoundError(PreconditionError):
    """A bracketing scan found no sign change for a required root."""
