class VersinusError(Exception):
    """Base class for pipeline errors (reported by the CLI with exit code 1)."""


class ParseError(VersinusError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class WindowError(VersinusError, ValueError):
    pass


class ConsistencyError(VersinusError, RuntimeError):
    """Internal invariant broken, e.g. a window vertex missing from the layout."""
