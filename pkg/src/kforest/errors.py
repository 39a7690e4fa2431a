"""Exception hierarchy shared by the library and the command-line tool."""


class KForestError(Exception):
    """Base class for every error raised by this package."""


class InputError(KForestError, ValueError):
    """Caller supplied data that violates an operation's precondition."""


class ParseError(InputError):
    """Malformed graph or solution file."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ContractError(InputError):
    """A vertex set does not satisfy the contraction precondition."""


class CapacityError(InputError):
    """Instance too large for an exhaustive routine."""


class StateError(KForestError, RuntimeError):
    """Operation called on an object in the wrong state."""


class InvariantError(KForestError, RuntimeError):
    """An internal invariant was violated; signals a bug in a subroutine."""


class GenerationError(KForestError):
    """A random instance could not be produced with the given parameters."""
