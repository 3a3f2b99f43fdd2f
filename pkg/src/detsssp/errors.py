"""Exception types shared across the package."""


class GraphBoundsError(ValueError):
    """A graph violates the signed 64-bit arithmetic safety bound."""


class DimacsError(ValueError):
    """Malformed DIMACS input; the message names the offending line."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class InvariantViolation(AssertionError):
    """An internal guarantee failed.  This always signals a bug."""
