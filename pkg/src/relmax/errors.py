"""Exception types shared across the package."""


class RelmaxError(Exception):
    """Base class for all errors raised by relmax."""

    kind = "error"


class CapExceeded(RelmaxError):
    """A configured size cap was exceeded."""

    kind = "cap-exceeded"


class UsageError(RelmaxError, ValueError):
    """Bad input: malformed spec, unknown name, failed precondition."""

    kind = "usage"


class TheoremViolation(RelmaxError):
    """A computed result contradicts a proved statement.

    These are never repaired silently; they indicate a bug in the engine
    (or, in principle, a counterexample).
    """

    kind = "theorem-violation"


class HypothesisFailure(RelmaxError):
    """The hypotheses of a checked statement do not hold for an instance."""

    kind = "hypothesis-failure"
