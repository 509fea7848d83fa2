"""Exception types shared across the package."""


class CircuitError(ValueError):
    """Raised when a circuit or topology value violates its invariants."""


class CapacityError(RuntimeError):
    """Raised when a request exceeds a configured size or budget cap."""


class ContractError(ValueError):
    """Raised when an operation's precondition does not hold."""


class ParseError(ValueError):
    """Raised on malformed text input; carries a 1-based line number."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None and col is not None:
            message = f"line {line}, col {col}: {message}"
        elif line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
