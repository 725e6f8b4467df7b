"""Exception types shared across the package."""


class LocdomError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(LocdomError):
    """Malformed input file; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SizeCapError(LocdomError):
    """Instance exceeds the configured size cap of an exact routine."""


class InapplicableRule(LocdomError):
    """A reduction rule's precondition does not hold."""


class CanonicalFormError(LocdomError):
    """A solution violates the structural shape required by a rebuild step.

    ``step`` names the specific property that failed, so callers can tell
    which part of the rebuild rejected the input.
    """

    def __init__(self, step: str, message: str):
        self.step = step
        super().__init__(f"{step}: {message}")


class InternalVerificationError(LocdomError):
    """A constructed certificate failed its own verification.

    This is never caused by bad user input: it means the construction or
    rewrite that produced the certificate is wrong, and the result must not
    be used.
    """
