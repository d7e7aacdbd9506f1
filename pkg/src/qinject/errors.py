"""Exception types shared across the package."""


class QinjectError(Exception):
    """Base class for all package-specific errors."""


class QasmSyntaxError(QinjectError):
    """Malformed OpenQASM source, with best-effort source location."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        loc = ""
        if line is not None:
            loc = f" at line {line}" + (f", col {col}" if col is not None else "")
        super().__init__(message + loc)
        self.line = line
        self.col = col


class UnsupportedGateError(QinjectError):
    """Gate with no registered decomposition."""


class QubitIndexError(QinjectError):
    """Qubit reference outside the declared register space."""


class NotCliffordError(QinjectError):
    """Conjugation requested through a non-Clifford gate."""


class CapacityError(QinjectError):
    """Logical qubits exceed the configured module capacity."""


class ConfigError(QinjectError):
    """Invalid or contradictory run configuration."""


class DomainError(QinjectError, ValueError):
    """Numeric argument outside its mathematical domain."""
