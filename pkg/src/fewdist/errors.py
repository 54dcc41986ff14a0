"""Exception hierarchy shared by all fewdist modules."""


class WorkbenchError(Exception):
    """Base class for all errors raised by fewdist."""


class DomainError(WorkbenchError):
    """Input violates a mathematical precondition (empty set, zero divisor, ...)."""


class ParseError(WorkbenchError):
    """Malformed scalar, set file, or point file. Message carries the line number."""


class FeasibilityError(WorkbenchError):
    """Projected enumeration size exceeds the configured limits.

    Raised before any large allocation happens; the message names the
    estimated pair count (or slot count) and the limit it exceeds.
    """
