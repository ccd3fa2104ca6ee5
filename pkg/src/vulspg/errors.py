"""Exception hierarchy shared across the package."""


class VulspgError(Exception):
    """Base class for all errors raised by this package."""


class LexError(VulspgError):
    """Lexical error, carries the offending position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at {line}:{column}")
        self.line = line
        self.column = column


class ParseError(VulspgError):
    """Syntax outside the supported C subset."""


class AnalysisError(VulspgError):
    """A graph analysis precondition was violated."""


class ConfigError(VulspgError):
    """Bad user-supplied configuration (file, kinds, ratios, ...)."""


class DimensionError(VulspgError):
    """Shape mismatch between tensor operands."""


class UsageError(VulspgError):
    """An operation was called in an unsupported way."""


class InternalError(VulspgError):
    """Internal consistency violation; indicates a bug, not bad input."""
