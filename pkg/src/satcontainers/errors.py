"""Exception types shared across the package."""


class DimacsParseError(ValueError):
    """Malformed DIMACS input; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class PreconditionError(ValueError):
    """An operation was invoked outside its stated preconditions."""


class InvariantViolationError(RuntimeError):
    """A guaranteed internal property failed; indicates a bug, not bad input."""
