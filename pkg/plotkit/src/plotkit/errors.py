"""Exception types for the figure renderer."""


class PlotkitError(Exception):
    """Base class for renderer errors."""


class SchemaError(PlotkitError):
    """Input CSV is missing required columns."""


class EmptyInput(PlotkitError):
    """Input CSV has no usable rows."""
