"""Exception types. Each maps to one CLI exit code."""


class RetintError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ParameterError(RetintError, ValueError):
    """An argument violates an operation's preconditions."""

    exit_code = 2


class DomainError(ParameterError):
    """A function was evaluated outside its mathematical domain."""


class InsufficientEventsError(RetintError):
    """Too few extreme events to form return intervals."""

    exit_code = 3

    def __init__(self, n_events: int, needed: int = 2):
        self.n_events = n_events
        self.needed = needed
        super().__init__(f"need at least {needed} events, got {n_events}")


class EstimationError(RetintError):
    """Not enough usable data points for an estimate."""

    exit_code = 3

    def __init__(self, message: str, usable: int | None = None):
        self.usable = usable
        if usable is not None:
            message = f"{message} (usable points: {usable})"
        super().__init__(message)


class SolverError(RetintError):
    """A root search failed to bracket or converge."""
