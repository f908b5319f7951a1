"""Exception types shared across the package."""


class HistreeError(Exception):
    """Base class for all package errors."""


class ParseError(HistreeError):
    """Malformed graph input. Carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(HistreeError, ValueError):
    """An argument violates an operation's stated precondition."""


class HypothesisViolation(HistreeError):
    """Input fails a structural hypothesis a construction step relies on."""


class ConstructionError(HistreeError):
    """Internal invariant of the case machine failed; indicates a bug.

    Carries the partial trace so the failing branch can be replayed.
    """

    def __init__(self, message: str, trace=None):
        self.trace = trace
        super().__init__(message)
