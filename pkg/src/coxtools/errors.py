"""Exception types shared across the package."""


class CoxeterError(Exception):
    """Base class for all package-specific errors."""


class GraphParseError(CoxeterError):
    """Malformed ``.cox`` input; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class InfiniteTypeError(CoxeterError):
    """An operation that needs a finite group met an infinite one."""


class CapExceededError(CoxeterError):
    """An enumeration or search would exceed its configured cap."""


class RootLookupError(CoxeterError):
    """A vector expected to be a known root missed the table by more
    than the tolerance (numerical drift, or a non-root was supplied)."""


class VerificationError(CoxeterError):
    """A closed-form answer disagreed with its brute-force oracle.

    This always indicates a bug, never a mathematical result."""
