"""Exception types shared across the package.

Every error raised on a user-facing path derives from GrotopError so the
service layer and CLI can map them to HTTP statuses / exit codes uniformly.
"""


class GrotopError(Exception):
    """Base class for all library errors."""


class ParseError(GrotopError):
    """Malformed poset description, point literal, or sequence rule."""


class NotAPartialOrder(GrotopError):
    """The declared relation has a cycle between distinct elements."""


class DuplicateElement(GrotopError):
    """An element identifier is declared more than once."""


class UnknownElement(GrotopError):
    """An element identifier is not part of the carrier."""


class TooLarge(GrotopError):
    """Input exceeds the supported size bound (bitmask width or budget)."""


class BudgetExceeded(GrotopError):
    """An enumeration or search exceeded its configured budget."""


class MalformedSieve(GrotopError):
    """A candidate sieve is not a down-closed subset of the base cone."""


class NotFinitelyGenerated(GrotopError):
    """An open-set intersection has no finite generator description."""


class BadCertificate(GrotopError):
    """A declared spectrality witness or escape chain fails verification."""


class BadCode(GrotopError):
    """An element code is not valid for the selected poset family."""


class UndecidableMembership(GrotopError):
    """A point description cannot decide membership for the given element."""


class NotDirected(GrotopError):
    """A supremum was requested for a non-directed collection of points."""


#: Errors that indicate bad input rather than an exhausted budget.
INPUT_ERRORS = (
    ParseError,
    NotAPartialOrder,
    DuplicateElement,
    UnknownElement,
    TooLarge,
    MalformedSieve,
    NotFinitelyGenerated,
    BadCertificate,
    BadCode,
    UndecidableMembership,
    NotDirected,
)
