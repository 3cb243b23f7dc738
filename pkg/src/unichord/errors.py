"""Exception types shared across the package."""


class GraphError(ValueError):
    """Invalid graph data: loops, unknown vertices, broken invariants."""


class ParseError(GraphError):
    """Malformed graph file.  Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(ValueError):
    """An operation was called outside its documented preconditions."""


class BoundExceededError(ValueError):
    """Input larger than a brute-force oracle's configured size bound."""


class TimeBudgetError(RuntimeError):
    """A time-guarded exhaustive search ran out of budget."""


class NotInClassError(ValueError):
    """No decomposition rule and no base class applies.

    For a long-unichord-free input this cannot happen, so it signals either
    an out-of-class graph or an upstream bug.
    """


class InternalInvariantError(AssertionError):
    """A checked-build runtime assertion failed (always a bug)."""
