"""Figure renderer for injection-policy benchmark results."""

from .data import METRICS, Row, load_results
from .errors import EmptyInput, PlotkitError, SchemaError
from .figures import FIGURE_KINDS, FigureSpec, render

__all__ = ["METRICS", "Row", "load_results", "EmptyInput", "PlotkitError",
           "SchemaError", "FIGURE_KINDS", "FigureSpec", "render"]

__version__ = "0.1.0"
